"""
Run dispatcher: validate a configuration, execute one subcommand under the
configured budgets, persist the outcome and emit the report.

Exit codes: 0 when the verdict is true, 1 when it is false, 2 on any error.
The reporting subcommands (criterion-table, cm-threshold) exit 0 whenever the
report is produced.
"""

import hashlib
import json
import logging
from dataclasses import dataclass
from pathlib import Path

from django.conf import settings
from rest_framework import serializers

from codes.enumeration import projective_count, shard_range
from codes.families import make_gabidulin, make_lp, make_twisted
from codes.rank_codes import (
    RankCode, hscattered_dimension_bound, is_moore_set, is_scattered, merge_distance_chunks,
    min_distance, mrd_distance, probe_exceptional, properties13_flags, singleton_bound,
)
from curves.criterion import cafure_matera_threshold, criterion_check
from curves.instance import XI_SET_READING, CurveInstance, curve_A
from curves.singularities import (
    affine_singularities, infinity_singularities, sigma_bound_report, w_rational_points,
)
from curves.tables import failing_pairs, theorem_table, DEFAULT_K_MAX, DEFAULT_Q, DEFAULT_T
from gf.exceptions import BudgetExceeded, InvalidInput, ToolkitError
from gf.fields import field_from_string
from linpoly.literals import lp_from_spec, lp_to_pairs

from .exceptions import CheckpointMismatch, SpecParse
from .models import SUBCOMMAND_CHOICES, EnumerationCheckpoint, RunReport
from .reports import emit_report
from .serializers import (
    CodeSpecSerializer, InstanceSpecSerializer, PolySpecSerializer, RunConfigSerializer,
)

logger = logging.getLogger(__name__)

REPORTING = ('criterion-table', 'cm-threshold')
# keys that change how a run is carried out, never what it reports
EXECUTION_KEYS = ('output', 'format', 'resume', 'workers', 'chunk_size')


@dataclass
class RunOutcome:
    exit_code: int
    report: dict
    text: str


def canonical_digest(data):
    payload = json.dumps(data, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(payload.encode('utf-8')).hexdigest()


def _validated(serializer_class, data):
    serializer = serializer_class(data=data)
    if not serializer.is_valid():
        raise SpecParse("invalid input mapping", **_flatten_errors(serializer.errors))
    return dict(serializer.validated_data)


def _flatten_errors(errors):
    flat = {}
    for key, value in errors.items():
        if isinstance(value, dict):
            for inner, message in _flatten_errors(value).items():
                flat[f"{key}.{inner}"] = message
        else:
            flat[key] = '; '.join(str(item) for item in value)
    return flat


def _limits(attrs):
    toolkit = settings.TOOLKIT
    return {
        'budget': attrs.get('budget', toolkit['ENUMERATION_BUDGET']),
        'field_budget': attrs.get('field_budget', toolkit['FIELD_SIZE_BUDGET']),
        'workers': attrs.get('workers', toolkit['WORKERS']),
        'chunk_size': attrs.get('chunk_size', toolkit['CHUNK_SIZE']),
    }


def _build_code(spec):
    spec = _validated(CodeSpecSerializer, spec)
    ctx = field_from_string(spec['field'])
    return RankCode([lp_from_spec(ctx, g) for g in spec['gens']], spec.get('t'))


def _build_poly(spec):
    spec = _validated(PolySpecSerializer, spec)
    ctx = field_from_string(spec['field'])
    return lp_from_spec(ctx, spec['poly']), spec['t']


def _check_field_budget(ctx, field_budget):
    if ctx.order > field_budget:
        raise BudgetExceeded(f"field order {ctx.order} exceeds field budget {field_budget}")


# ----------------------------------------------------------------------
# checkpointed enumerations
# ----------------------------------------------------------------------

def _checkpoint(attrs, total):
    index, count = attrs.get('shard', [0, 1])
    start, stop = shard_range(total, index, count)
    run_key = canonical_digest({
        'subcommand': attrs['subcommand'], 'spec': attrs['spec'], 'shard': [index, count],
    })
    checkpoint = EnumerationCheckpoint.objects.filter(run_key=run_key).first()
    if checkpoint and attrs.get('resume'):
        if (checkpoint.start, checkpoint.stop) != (start, stop):
            raise CheckpointMismatch(
                "stored checkpoint covers a different range",
                stored=f"{checkpoint.start}-{checkpoint.stop}", requested=f"{start}-{stop}",
            )
        logger.info("resuming %s shard %d/%d at %d", attrs['subcommand'], index, count,
                    checkpoint.next_index)
        return checkpoint
    if checkpoint is None:
        checkpoint = EnumerationCheckpoint(run_key=run_key)
    checkpoint.subcommand = attrs['subcommand']
    checkpoint.shard_index, checkpoint.shard_count = index, count
    checkpoint.start, checkpoint.stop = start, stop
    checkpoint.next_index = start
    checkpoint.state = {}
    checkpoint.completed = False
    checkpoint.save()
    return checkpoint


def _blocks(checkpoint, limits):
    step = limits['chunk_size'] * limits['workers']
    for lo in range(checkpoint.next_index, checkpoint.stop, step):
        yield lo, min(checkpoint.stop, lo + step)


def _advance(checkpoint, state, hi):
    checkpoint.state = state
    checkpoint.next_index = hi
    checkpoint.completed = hi >= checkpoint.stop
    checkpoint.save(update_fields=['state', 'next_index', 'completed', 'updated_at'])


def _shard_info(checkpoint):
    return {
        'shard': [checkpoint.shard_index, checkpoint.shard_count],
        'range': [checkpoint.start, checkpoint.stop],
    }


def run_check_mrd(attrs, limits):
    code = _build_code(attrs['spec'])
    checkpoint = _checkpoint(attrs, projective_count(code.ctx.order, code.r))
    chunks = checkpoint.state.get('chunks', [])
    for lo, hi in _blocks(checkpoint, limits):
        block = min_distance(
            code, budget=limits['budget'], chunk_size=limits['chunk_size'],
            workers=limits['workers'], start=lo, stop=hi,
        )
        chunk = {'lo': lo, 'd': block.d, 'witness': block.witness,
                 'examined': block.examined, 'spectrum': block.spectrum}
        merged = merge_distance_chunks(code, chunks + [chunk])
        chunks = [{'lo': checkpoint.start, 'd': merged.d, 'witness': merged.witness,
                   'examined': merged.examined, 'spectrum': merged.spectrum}]
        _advance(checkpoint, {'chunks': chunks}, hi)

    verdict = merge_distance_chunks(code, chunks)
    target = mrd_distance(code.n, code.r)
    result = verdict.as_dict()
    result.update({
        'spectrum': verdict.spectrum or [0] * (code.n + 1),
        'mrd_distance': target,
        'singleton_bound': singleton_bound(code.q, code.n, target),
        'properties': properties13_flags(code),
        'scattered_dimension_bound': str(hscattered_dimension_bound(code.r, code.n, 1)),
        **_shard_info(checkpoint),
    })
    return result, verdict.d is None or verdict.d >= target


def run_check_moore(attrs, limits):
    code = _build_code(attrs['spec'])
    checkpoint = _checkpoint(attrs, code.ctx.order ** code.r)
    state = checkpoint.state or {'witness': None, 'examined': 0}
    for lo, hi in _blocks(checkpoint, limits):
        if state['witness'] is not None:
            break
        block = is_moore_set(
            code, budget=limits['budget'], chunk_size=limits['chunk_size'],
            workers=limits['workers'], start=lo, stop=hi,
        )
        state = {
            'witness': block.witness,
            'examined': state['examined'] + block.examined,
        }
        _advance(checkpoint, state, hi)

    holds = state['witness'] is None
    result = {
        'holds': holds,
        'witness': state['witness'],
        'examined': state['examined'],
        'moore_polynomial_set': code.moore_polynomial_set,
        'q': code.q, 'n': code.n, 'r': code.r, 't': code.t,
        **_shard_info(checkpoint),
    }
    return result, holds


# ----------------------------------------------------------------------
# direct subcommands
# ----------------------------------------------------------------------

def run_check_scattered(attrs, limits):
    f, t = _build_poly(attrs['spec'])
    _check_field_budget(f.ctx, limits['field_budget'])
    verdict = is_scattered(f, t)
    return {**verdict.as_dict(), 'field': f.ctx.spec, 't': t}, verdict.scattered


def run_probe_exceptional(attrs, limits):
    spec = attrs['spec']
    if 'gens' in spec:
        target = _build_code(spec)
        t, kind = target.t, 'code'
    else:
        target, t = _build_poly(spec)
        kind = 'polynomial'
    t = attrs.get('t', t)
    if t is None:
        raise InvalidInput("probe needs an index t")
    probes = probe_exceptional(
        target, t, attrs['extensions'],
        field_budget=limits['field_budget'], budget=limits['budget'],
    )
    return {'target': kind, 't': t, 'probes': probes}, all(row['verdict'] for row in probes)


def run_families(attrs, limits):
    ctx = field_from_string(attrs['field'])
    family = attrs['family']
    if family == 'lp':
        f = make_lp(ctx, attrs['t'], ctx.parse_element(attrs['delta']))
        _check_field_budget(ctx, limits['field_budget'])
        verdict = is_scattered(f, attrs['t'])
        built = {'field': ctx.spec, 'poly': lp_to_pairs(f), 't': attrs['t']}
        return {'family': family, 'built': built, 'check': verdict.as_dict()}, verdict.scattered

    if family == 'gabidulin':
        code = make_gabidulin(ctx, attrs['r'], attrs['s'])
    else:
        code = make_twisted(ctx, attrs['r'], attrs['s'], ctx.parse_element(attrs['delta']))
    verdict = min_distance(
        code, budget=limits['budget'], chunk_size=limits['chunk_size'], workers=limits['workers'],
    )
    return {'family': family, 'built': code.spec(), 'check': verdict.as_dict()}, bool(verdict.is_mrd)


def run_curve_analyze(attrs, limits):
    spec = _validated(InstanceSpecSerializer, attrs['spec'])
    instance = CurveInstance.from_spec(spec)
    affine = None
    if instance.ctx.order <= limits['field_budget']:
        affine = [report.as_dict() for report in affine_singularities(instance)]
    else:
        logger.info("skipping affine enumeration over F_%d", instance.ctx.order)
    w_points = None
    if instance.small.order ** 2 <= limits['budget']:
        w_points = w_rational_points(instance, limits['budget'])
    else:
        logger.info("skipping W point search over F_%d", instance.small.order)
    criterion = criterion_check(instance, verify_infinity=attrs.get('verify_infinity', False))
    result = {
        'instance': instance.spec(),
        'lambda': int(instance.lam),
        'working_degree': instance.N,
        'degrees': {
            'C': instance.degree_C,
            'A': curve_A(instance).total_degree(),
            'criterion': instance.criterion_degree,
        },
        'infinity': [
            report.as_dict()
            for report in infinity_singularities(instance, branches=attrs.get('branches', True))
        ],
        'affine': affine,
        'w_points': w_points,
        'criterion': criterion.as_dict(),
        'sigma_bounds': sigma_bound_report(instance),
        'xi_set_reading': XI_SET_READING,
    }
    return result, criterion.holds


def run_criterion_table(attrs, limits):
    case = attrs.get('case', '2t')
    rows = theorem_table(
        case,
        q_values=tuple(attrs.get('q_values', DEFAULT_Q)),
        t_values=tuple(attrs.get('t_values', DEFAULT_T)),
        k_max=attrs.get('k_max', DEFAULT_K_MAX),
    )
    failing = failing_pairs(rows)
    result = {
        'case': case,
        'rows': [row.as_dict() for row in rows],
        'failing_pairs': [list(pair) for pair in failing],
    }
    return result, not failing


def run_cm_threshold(attrs, limits):
    dim, deg = attrs['dim'], attrs['deg']
    threshold = cafure_matera_threshold(dim, deg)
    return {'dim': dim, 'deg': deg, 'bound': 2 * (dim + 1) * deg * deg, 'threshold': threshold}, True


HANDLERS = {
    'check-mrd': run_check_mrd,
    'check-scattered': run_check_scattered,
    'check-moore': run_check_moore,
    'probe-exceptional': run_probe_exceptional,
    'families': run_families,
    'curve-analyze': run_curve_analyze,
    'criterion-table': run_criterion_table,
    'cm-threshold': run_cm_threshold,
}


# ----------------------------------------------------------------------
# entry point
# ----------------------------------------------------------------------

def report_input(attrs):
    return {key: value for key, value in sorted(attrs.items()) if key not in EXECUTION_KEYS}


def error_report(subcommand, exc):
    known = {key for key, _ in SUBCOMMAND_CHOICES}
    if not isinstance(subcommand, str) or subcommand not in known:
        subcommand = None
    return {'subcommand': subcommand, 'error': exc.as_dict()}


def _validate_config(config):
    serializer = RunConfigSerializer(data=config)
    try:
        serializer.is_valid(raise_exception=True)
    except serializers.ValidationError:
        raise SpecParse("invalid run configuration", **_flatten_errors(serializer.errors))
    return dict(serializer.validated_data)


def run(config):
    """Execute one configured run and return its outcome."""
    subcommand = config.get('subcommand') if isinstance(config, dict) else None
    fmt = 'json'
    output = None
    attrs = {}
    try:
        attrs = _validate_config(config)
        fmt, output = attrs['format'], attrs.get('output')
        if output:
            output = str(Path(settings.TOOLKIT['REPORT_DIR']) / output)
        result, verdict = HANDLERS[subcommand](attrs, _limits(attrs))
        report = {
            'subcommand': subcommand,
            'input': report_input(attrs),
            'verdict': bool(verdict),
            'result': result,
        }
        exit_code = 0 if verdict or subcommand in REPORTING else 1
    except ToolkitError as exc:
        logger.warning("%s failed with %s: %s", subcommand, exc.code, exc)
        report, exit_code = error_report(subcommand, exc), RunReport.ERROR

    try:
        text = emit_report(report, fmt, output)
    except ToolkitError as exc:
        logger.error("report emission failed: %s", exc)
        report, exit_code = error_report(subcommand, exc), RunReport.ERROR
        text = emit_report(report, fmt)
        output = None

    RunReport.objects.create(
        subcommand=report['subcommand'] or '',
        config_digest=canonical_digest(report_input(attrs)) if attrs else '',
        config=report_input(attrs),
        exit_code=exit_code,
        report=report,
        output_path=output or '',
    )
    logger.info("%s finished with exit code %d", subcommand, exit_code)
    return RunOutcome(exit_code, report, text)
