"""
Byte-stable serialization of run reports.

JSON reports use sorted keys and integer element indices; every CSV layout has
a fixed header row.
"""

import csv
import io
import json
import logging
from functools import lru_cache
from pathlib import Path

import jsonschema

from curves.tables import CSV_HEADER as TABLE_HEADER

from .exceptions import IoFailure, ReportSchemaViolation

logger = logging.getLogger(__name__)

SCHEMA_DIR = Path(__file__).resolve().parent / 'schemas'

SPECTRUM_HEADER = ('rank', 'count')
PROBE_HEADER = ('m', 'verdict', 'd', 'witness')
SINGULARITY_HEADER = (
    'kind', 'x', 'y', 'xi', 'multiplicity', 'cone_class', 'ipmax', 'branch_count',
    'omega', 'pi', 'theta', 'sigma',
)
KEY_VALUE_HEADER = ('key', 'value')
ERROR_HEADER = ('code', 'message')


@lru_cache(maxsize=None)
def load_schema(name):
    return json.loads((SCHEMA_DIR / name).read_text(encoding='utf-8'))


def validate_report(report):
    try:
        jsonschema.validate(report, load_schema('report.schema.json'))
        if report.get('subcommand') == 'curve-analyze' and 'result' in report:
            jsonschema.validate(report['result'], load_schema('curve_result.schema.json'))
    except jsonschema.ValidationError as exc:
        raise ReportSchemaViolation(exc.message, path='/'.join(str(p) for p in exc.absolute_path))


def _cell(value):
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True, separators=(',', ':'))
    return str(value)


def csv_table(report):
    """Header and rows of the CSV layout for this report."""
    if 'error' in report:
        error = report['error']
        return ERROR_HEADER, [(error['code'], error['message'])]

    result = report['result']
    subcommand = report['subcommand']
    if subcommand == 'criterion-table':
        return TABLE_HEADER, [tuple(row[key] for key in TABLE_HEADER) for row in result['rows']]
    if subcommand == 'check-mrd':
        return SPECTRUM_HEADER, [(rank, count) for rank, count in enumerate(result['spectrum']) if count]
    if subcommand == 'probe-exceptional':
        return PROBE_HEADER, [
            (row['m'], row['verdict'], row.get('d'), row['witness']) for row in result['probes']
        ]
    if subcommand == 'curve-analyze':
        rows = []
        for report_row in result['infinity'] + (result.get('affine') or []):
            point, flags = report_row['point'], report_row['flags']
            rows.append((
                point['kind'], point.get('x'), point.get('y'), point.get('xi'),
                report_row['multiplicity'], report_row['cone_class'], report_row['ipmax'],
                report_row['branch_count'],
                flags['omega'], flags['pi'], flags['theta'], flags['sigma'],
            ))
        return SINGULARITY_HEADER, rows
    return KEY_VALUE_HEADER, sorted(result.items())


def render_json(report):
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def render_csv(report):
    header, rows = csv_table(report)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(value) for value in row])
    return buffer.getvalue()


def emit_report(report, fmt='json', path=None):
    """Validate, render and optionally write a report; returns the rendered text."""
    validate_report(report)
    text = render_csv(report) if fmt == 'csv' else render_json(report)
    if path:
        target = Path(path)
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(text, encoding='utf-8')
        except OSError as exc:
            raise IoFailure(f"cannot write report to {target}: {exc.strerror}", path=str(target))
        logger.info("wrote %s report to %s", fmt, target)
    return text
