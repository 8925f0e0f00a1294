# Generated by Django 5.1 on 2026-10-19 09:12

from django.db import migrations, models


SUBCOMMANDS = [
    ('check-mrd', 'Check MRD'),
    ('check-scattered', 'Check scattered'),
    ('check-moore', 'Check Moore set'),
    ('probe-exceptional', 'Probe exceptionality'),
    ('families', 'Build and verify a family'),
    ('curve-analyze', 'Curve analysis'),
    ('criterion-table', 'Criterion table'),
    ('cm-threshold', 'Threshold for rational points'),
]


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='RunReport',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('subcommand', models.CharField(choices=SUBCOMMANDS, max_length=32)),
                ('config_digest', models.CharField(db_index=True, max_length=64)),
                ('config', models.JSONField(default=dict)),
                ('exit_code', models.PositiveSmallIntegerField(choices=[(0, 'Verdict true'), (1, 'Verdict false'), (2, 'Error')])),
                ('report', models.JSONField(default=dict)),
                ('output_path', models.CharField(blank=True, max_length=512)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'verbose_name': 'Run report',
                'verbose_name_plural': 'Run reports',
                'db_table': 'run_reports',
                'ordering': ['-created_at'],
            },
        ),
        migrations.CreateModel(
            name='EnumerationCheckpoint',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('run_key', models.CharField(max_length=64, unique=True)),
                ('subcommand', models.CharField(choices=SUBCOMMANDS, max_length=32)),
                ('shard_index', models.PositiveIntegerField(default=0)),
                ('shard_count', models.PositiveIntegerField(default=1)),
                ('start', models.BigIntegerField()),
                ('stop', models.BigIntegerField()),
                ('next_index', models.BigIntegerField()),
                ('state', models.JSONField(default=dict)),
                ('completed', models.BooleanField(default=False)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('updated_at', models.DateTimeField(auto_now=True)),
            ],
            options={
                'verbose_name': 'Enumeration checkpoint',
                'verbose_name_plural': 'Enumeration checkpoints',
                'db_table': 'enumeration_checkpoints',
                'ordering': ['run_key'],
            },
        ),
    ]
