"""
Batch front-end: ``python manage.py toolkit <subcommand> [options]``.

The report goes to --output when given, otherwise to stdout. A false verdict
exits 1 and an error exits 2.
"""

from django.core.management.base import BaseCommand, CommandError

from runs.dispatch import run

# options passed through to the run configuration when set
CONFIG_OPTIONS = (
    'spec', 'budget', 'field_budget', 'workers', 'chunk_size', 'format', 'output', 'shard',
    'resume', 'extensions', 't', 'family', 'field', 'r', 's', 'delta', 'case',
    'q_values', 't_values', 'k_max', 'dim', 'deg', 'verify_infinity', 'branches',
)


def _add_common(parser, spec=True):
    if spec:
        parser.add_argument('--spec', required=True,
                            help='Spec as a .json/.yaml path or inline JSON/YAML text')
    parser.add_argument('--budget', type=int, help='Enumeration budget (tuples or codewords)')
    parser.add_argument('--field-budget', type=int, help='Largest field order to enumerate')
    parser.add_argument('--workers', type=int)
    parser.add_argument('--chunk-size', type=int)
    parser.add_argument('--format', choices=['json', 'csv'], default='json')
    parser.add_argument('--output', help='Report path; stdout when omitted')


def _add_sharding(parser):
    parser.add_argument('--shard', help='Process shard i of k, written i/k')
    parser.add_argument('--resume', action='store_true', help='Continue from the stored checkpoint')


class Command(BaseCommand):
    help = 'Run one rank-metric or curve computation and emit its report'

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='subcommand', required=True)

        for name in ('check-mrd', 'check-moore'):
            sub = subparsers.add_parser(name)
            _add_common(sub)
            _add_sharding(sub)

        sub = subparsers.add_parser('check-scattered')
        _add_common(sub)

        sub = subparsers.add_parser('probe-exceptional')
        _add_common(sub)
        sub.add_argument('--extensions', type=int, nargs='+', required=True)
        sub.add_argument('--t', type=int)

        sub = subparsers.add_parser('families')
        _add_common(sub, spec=False)
        sub.add_argument('--family', choices=['gabidulin', 'twisted', 'lp'], required=True)
        sub.add_argument('--field', required=True, help='Field spec p^e^N[:modulus=...]')
        sub.add_argument('--r', type=int)
        sub.add_argument('--s', type=int)
        sub.add_argument('--t', type=int)
        sub.add_argument('--delta')

        sub = subparsers.add_parser('curve-analyze')
        _add_common(sub)
        sub.add_argument('--verify-infinity', action='store_true')
        sub.add_argument('--no-branches', dest='branches', action='store_false')

        sub = subparsers.add_parser('criterion-table')
        _add_common(sub, spec=False)
        sub.add_argument('--case', choices=['2t', 't/2'], default='2t')
        sub.add_argument('--q-values', type=int, nargs='+')
        sub.add_argument('--t-values', type=int, nargs='+')
        sub.add_argument('--k-max', type=int)

        sub = subparsers.add_parser('cm-threshold')
        _add_common(sub, spec=False)
        sub.add_argument('--dim', type=int, required=True)
        sub.add_argument('--deg', type=int, required=True)

    def handle(self, *args, **options):
        config = {'subcommand': options['subcommand']}
        for key in CONFIG_OPTIONS:
            value = options.get(key)
            if value is None or (key == 'resume' and not value):
                continue
            config[key] = value

        outcome = run(config)
        if not config.get('output'):
            self.stdout.write(outcome.text, ending='')
        if outcome.exit_code:
            error = outcome.report.get('error')
            message = f"{error['code']}: {error['message']}" if error else 'verdict is false'
            raise CommandError(message, returncode=outcome.exit_code)
