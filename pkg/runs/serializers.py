"""
Strict validators for run configurations and the specs they carry.

Unknown keys are rejected everywhere: a misspelt ``delta`` or ``t`` must never
fall back to a default.
"""

import re
from pathlib import Path

import yaml
from rest_framework import serializers

from .models import SUBCOMMAND_CHOICES

SHARD_RE = re.compile(r'^\s*(\d+)\s*/\s*(\d+)\s*$')

REQUIRED_KEYS = {
    'check-mrd': ('spec',),
    'check-scattered': ('spec',),
    'check-moore': ('spec',),
    'probe-exceptional': ('spec', 'extensions'),
    'families': ('family', 'field'),
    'curve-analyze': ('spec',),
    'criterion-table': (),
    'cm-threshold': ('dim', 'deg'),
}
SHARDABLE = ('check-mrd', 'check-moore')


class StrictFieldsMixin:
    """Reject keys that the serializer does not declare."""

    def validate(self, attrs):
        if isinstance(self.initial_data, dict):
            unknown = sorted(set(self.initial_data) - set(self.fields))
            if unknown:
                raise serializers.ValidationError({key: 'Unknown field.' for key in unknown})
        return super().validate(attrs)


class SpecField(serializers.Field):
    """A mapping given inline, as YAML/JSON text, or as a path to such a file."""

    default_error_messages = {
        'invalid': 'Expected a mapping, a YAML/JSON document or a path to one.',
        'unreadable': 'Could not read {path}.',
    }

    def to_internal_value(self, data):
        if isinstance(data, dict):
            return data
        if not isinstance(data, str):
            self.fail('invalid')
        text = data
        path = Path(data)
        if len(data) < 1024 and '\n' not in data and path.suffix in ('.json', '.yaml', '.yml'):
            try:
                text = path.read_text(encoding='utf-8')
            except OSError:
                self.fail('unreadable', path=data)
        try:
            parsed = yaml.safe_load(text)
        except yaml.YAMLError:
            self.fail('invalid')
        if not isinstance(parsed, dict):
            self.fail('invalid')
        return parsed

    def to_representation(self, value):
        return value


class CodeSpecSerializer(StrictFieldsMixin, serializers.Serializer):
    """Code spec: field string, generator literals and an optional t."""
    field = serializers.CharField()
    gens = serializers.ListField(child=serializers.JSONField(), min_length=1)
    t = serializers.IntegerField(min_value=0, required=False, allow_null=True)


class PolySpecSerializer(StrictFieldsMixin, serializers.Serializer):
    """One linearized polynomial with the t used for scatteredness checks."""
    field = serializers.CharField()
    poly = serializers.JSONField()
    t = serializers.IntegerField(min_value=0)


class InstanceSpecSerializer(StrictFieldsMixin, serializers.Serializer):
    """Parameters of a curve instance before CurveInstance validates them."""
    p = serializers.IntegerField(min_value=2)
    e = serializers.IntegerField(min_value=1, default=1)
    n = serializers.IntegerField(min_value=1)
    t = serializers.IntegerField(min_value=1)
    k = serializers.IntegerField(min_value=3)
    case = serializers.ChoiceField(choices=['2t', 't/2'], default='2t')
    delta = serializers.JSONField()
    G_coeffs = serializers.JSONField()
    # "lambda" is a keyword, so the field is declared below
    modulus = serializers.ListField(child=serializers.IntegerField(min_value=0), required=False)

    def get_fields(self):
        fields = super().get_fields()
        fields['lambda'] = serializers.JSONField(required=False, allow_null=True)
        return fields


class RunConfigSerializer(StrictFieldsMixin, serializers.Serializer):
    """Merged run configuration: defaults, environment, then command options."""
    subcommand = serializers.ChoiceField(choices=[key for key, _ in SUBCOMMAND_CHOICES])
    spec = SpecField(required=False)

    budget = serializers.IntegerField(min_value=1, required=False)
    field_budget = serializers.IntegerField(min_value=1, required=False)
    workers = serializers.IntegerField(min_value=1, required=False)
    chunk_size = serializers.IntegerField(min_value=1, required=False)

    format = serializers.ChoiceField(choices=['json', 'csv'], default='json')
    output = serializers.CharField(required=False, allow_blank=False)
    shard = serializers.CharField(required=False)
    resume = serializers.BooleanField(default=False)

    extensions = serializers.ListField(child=serializers.IntegerField(min_value=1), required=False, min_length=1)
    t = serializers.IntegerField(min_value=0, required=False)

    family = serializers.ChoiceField(choices=['gabidulin', 'twisted', 'lp'], required=False)
    field = serializers.CharField(required=False)
    r = serializers.IntegerField(min_value=1, required=False)
    s = serializers.IntegerField(min_value=1, required=False)
    delta = serializers.JSONField(required=False)

    case = serializers.ChoiceField(choices=['2t', 't/2'], default='2t')
    q_values = serializers.ListField(child=serializers.IntegerField(min_value=2), required=False, min_length=1)
    t_values = serializers.ListField(child=serializers.IntegerField(min_value=1), required=False, min_length=1)
    k_max = serializers.IntegerField(min_value=3, required=False)

    dim = serializers.IntegerField(min_value=1, required=False)
    deg = serializers.IntegerField(min_value=1, required=False)

    verify_infinity = serializers.BooleanField(default=False)
    branches = serializers.BooleanField(default=True)

    def validate_shard(self, value):
        match = SHARD_RE.match(value)
        if not match:
            raise serializers.ValidationError("Shard must look like i/k.")
        index, count = int(match.group(1)), int(match.group(2))
        if count < 1 or not 0 <= index < count:
            raise serializers.ValidationError("Shard index must satisfy 0 <= i < k.")
        return [index, count]

    def validate(self, attrs):
        attrs = super().validate(attrs)
        subcommand = attrs['subcommand']
        missing = [key for key in REQUIRED_KEYS[subcommand] if key not in attrs]
        if missing:
            raise serializers.ValidationError({key: f'Required for {subcommand}.' for key in missing})
        if subcommand not in SHARDABLE and ('shard' in attrs or attrs.get('resume')):
            raise serializers.ValidationError({'shard': f'{subcommand} cannot be sharded or resumed.'})
        family = attrs.get('family')
        if family in ('gabidulin', 'twisted') and ('r' not in attrs or 's' not in attrs):
            raise serializers.ValidationError({'r': 'Families gabidulin and twisted need r and s.'})
        if family in ('twisted', 'lp') and 'delta' not in attrs:
            raise serializers.ValidationError({'delta': f'Family {family} needs delta.'})
        if family == 'lp' and 't' not in attrs:
            raise serializers.ValidationError({'t': 'Family lp needs t.'})
        return attrs
