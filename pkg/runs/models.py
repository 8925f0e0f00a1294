"""
Stored run reports and resumable enumeration checkpoints.
"""

from django.db import models


SUBCOMMAND_CHOICES = [
    ('check-mrd', 'Check MRD'),
    ('check-scattered', 'Check scattered'),
    ('check-moore', 'Check Moore set'),
    ('probe-exceptional', 'Probe exceptionality'),
    ('families', 'Build and verify a family'),
    ('curve-analyze', 'Curve analysis'),
    ('criterion-table', 'Criterion table'),
    ('cm-threshold', 'Threshold for rational points'),
]


class RunReport(models.Model):
    """One executed run with the exact report it produced."""

    VERDICT_TRUE = 0
    VERDICT_FALSE = 1
    ERROR = 2

    subcommand = models.CharField(max_length=32, choices=SUBCOMMAND_CHOICES)
    config_digest = models.CharField(max_length=64, db_index=True)
    config = models.JSONField(default=dict)
    exit_code = models.PositiveSmallIntegerField(
        choices=[(VERDICT_TRUE, 'Verdict true'), (VERDICT_FALSE, 'Verdict false'), (ERROR, 'Error')]
    )
    report = models.JSONField(default=dict)
    output_path = models.CharField(max_length=512, blank=True)

    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        db_table = 'run_reports'
        verbose_name = 'Run report'
        verbose_name_plural = 'Run reports'
        ordering = ['-created_at']

    def __str__(self):
        return f"{self.subcommand} [{self.config_digest[:12]}] exit={self.exit_code}"


class EnumerationCheckpoint(models.Model):
    """
    Progress of one shard of a long enumeration.

    ``state`` holds the merged partial results for [start, next_index).
    """

    run_key = models.CharField(max_length=64, unique=True)
    subcommand = models.CharField(max_length=32, choices=SUBCOMMAND_CHOICES)
    shard_index = models.PositiveIntegerField(default=0)
    shard_count = models.PositiveIntegerField(default=1)
    start = models.BigIntegerField()
    stop = models.BigIntegerField()
    next_index = models.BigIntegerField()
    state = models.JSONField(default=dict)
    completed = models.BooleanField(default=False)

    created_at = models.DateTimeField(auto_now_add=True)
    updated_at = models.DateTimeField(auto_now=True)

    class Meta:
        db_table = 'enumeration_checkpoints'
        verbose_name = 'Enumeration checkpoint'
        verbose_name_plural = 'Enumeration checkpoints'
        ordering = ['run_key']

    def __str__(self):
        return f"{self.subcommand} shard {self.shard_index}/{self.shard_count} at {self.next_index}"

    @property
    def remaining(self):
        return self.stop - self.next_index
