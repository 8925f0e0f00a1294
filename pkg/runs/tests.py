import csv
import io
import json
import tempfile
from pathlib import Path
from unittest import mock

from django.core.management import CommandError, call_command
from django.test import TestCase

from gf.exceptions import BudgetExceeded

from . import dispatch
from .dispatch import run
from .exceptions import ReportSchemaViolation
from .models import EnumerationCheckpoint, RunReport
from .reports import render_json, validate_report

GABIDULIN_F32 = {'field': '2^1^5', 'gens': [[[0, 1]], [[1, 1]], [[2, 1]]], 't': 0}
NON_MRD_F81 = {'field': '3^1^4', 'gens': [[[0, 1]], [[2, 1]]]}
GABIDULIN_F16 = {'field': '2^1^4', 'gens': [[[0, 1]], [[1, 1]], [[2, 1]]], 't': 0}


class ExitCodeTests(TestCase):

    def test_check_mrd_gabidulin(self):
        outcome = run({'subcommand': 'check-mrd', 'spec': GABIDULIN_F32})
        self.assertEqual(outcome.exit_code, 0)
        result = outcome.report['result']
        self.assertEqual(result['d'], 3)
        self.assertTrue(result['is_mrd'])
        self.assertEqual(result['examined'], 1057)
        self.assertEqual(sum(result['spectrum']), 1057)

    def test_check_mrd_false_verdict(self):
        outcome = run({'subcommand': 'check-mrd', 'spec': NON_MRD_F81})
        self.assertEqual(outcome.exit_code, 1)
        self.assertFalse(outcome.report['verdict'])
        self.assertLess(outcome.report['result']['d'], 3)

    def test_check_scattered(self):
        true = run({'subcommand': 'check-scattered',
                    'spec': {'field': '2^1^5', 'poly': [[1, 1]], 't': 0}})
        false = run({'subcommand': 'check-scattered',
                     'spec': {'field': '3^1^4', 'poly': [[0, 1], [2, 2]], 't': 1}})
        self.assertEqual(true.exit_code, 0)
        self.assertEqual(false.exit_code, 1)
        self.assertEqual(false.report['result']['witness_kernel_dim'], 2)

    def test_check_moore(self):
        outcome = run({'subcommand': 'check-moore', 'spec': GABIDULIN_F16})
        self.assertEqual(outcome.exit_code, 0)
        self.assertEqual(outcome.report['result']['examined'], 16 ** 3)

    def test_budget_exceeded_is_an_error(self):
        outcome = run({'subcommand': 'check-moore', 'spec': GABIDULIN_F32, 'budget': 1000})
        self.assertEqual(outcome.exit_code, 2)
        self.assertEqual(outcome.report['error']['code'], 'BUDGET_EXCEEDED')

    def test_probe_exceptional(self):
        outcome = run({
            'subcommand': 'probe-exceptional',
            'spec': {'field': '2^1^3', 'poly': [[1, 1]], 't': 0},
            'extensions': [1, 2],
        })
        self.assertEqual(outcome.exit_code, 0)
        self.assertEqual([row['m'] for row in outcome.report['result']['probes']], [1, 2])

    def test_families(self):
        gabidulin = run({'subcommand': 'families', 'family': 'gabidulin', 'field': '2^1^5',
                         'r': 3, 's': 1})
        lp = run({'subcommand': 'families', 'family': 'lp', 'field': '3^1^4', 't': 1,
                  'delta': 'g^1'})
        norm_one = run({'subcommand': 'families', 'family': 'lp', 'field': '3^1^4', 't': 1,
                        'delta': 2})
        self.assertEqual(gabidulin.exit_code, 0)
        self.assertEqual(gabidulin.report['result']['check']['d'], 3)
        self.assertEqual(lp.exit_code, 0)
        self.assertEqual(norm_one.exit_code, 2)
        self.assertEqual(norm_one.report['error']['code'], 'NORM_CONDITION_VIOLATION')

    def test_cm_threshold(self):
        outcome = run({'subcommand': 'cm-threshold', 'dim': 1, 'deg': 2})
        self.assertEqual(outcome.exit_code, 0)
        self.assertEqual(outcome.report['result']['threshold'], 17)

    def test_curve_analyze(self):
        spec = {'p': 3, 'n': 6, 't': 1, 'k': 4, 'delta': 'g^1', 'G_coeffs': [[2, 1], [4, 1]]}
        outcome = run({'subcommand': 'curve-analyze', 'spec': spec})
        self.assertEqual(outcome.exit_code, 1)
        result = outcome.report['result']
        self.assertEqual(result['degrees'], {'C': 90, 'A': 78, 'criterion': 77})
        self.assertEqual(len(result['infinity']), 10)
        self.assertIsNotNone(result['affine'])
        self.assertFalse(result['criterion']['holds'])
        self.assertEqual(result['criterion']['degree'], 77)
        self.assertEqual(result['criterion']['reduced_degree'], 78)
        w_points = result['w_points']
        self.assertEqual(w_points['examined'], 729 ** 2)
        self.assertEqual(w_points['holds'], not w_points['points'])

    def test_curve_analyze_skips_w_points_over_budget(self):
        spec = {'p': 3, 'n': 6, 't': 1, 'k': 4, 'delta': 'g^1', 'G_coeffs': [[2, 1], [4, 1]]}
        outcome = run({'subcommand': 'curve-analyze', 'spec': spec, 'budget': 10 ** 5})
        self.assertIsNone(outcome.report['result']['w_points'])
        self.assertEqual(outcome.report['result']['degrees']['A'], 78)


class SpecParseTests(TestCase):

    def assertSpecParse(self, config):
        outcome = run(config)
        self.assertEqual(outcome.exit_code, 2)
        self.assertEqual(outcome.report['error']['code'], 'SPEC_PARSE')
        return outcome

    def test_unknown_spec_key(self):
        spec = dict(NON_MRD_F81, tt=1)
        outcome = self.assertSpecParse({'subcommand': 'check-mrd', 'spec': spec})
        self.assertIn('tt', outcome.report['error']['details'])

    def test_unknown_config_key(self):
        self.assertSpecParse({'subcommand': 'cm-threshold', 'dim': 1, 'deg': 2, 'degree': 3})

    def test_missing_required_key(self):
        self.assertSpecParse({'subcommand': 'check-mrd'})

    def test_unknown_subcommand(self):
        outcome = self.assertSpecParse({'subcommand': 'plot'})
        self.assertIsNone(outcome.report['subcommand'])

    def test_bad_field_string(self):
        self.assertSpecParse({'subcommand': 'check-mrd', 'spec': {'field': '3^x', 'gens': [[[0, 1]]]}})

    def test_bad_shard(self):
        self.assertSpecParse({'subcommand': 'check-mrd', 'spec': GABIDULIN_F32, 'shard': '2/2'})

    def test_resume_only_for_enumerations(self):
        self.assertSpecParse({'subcommand': 'cm-threshold', 'dim': 1, 'deg': 2, 'resume': True})

    def test_non_positive_budget(self):
        self.assertSpecParse({'subcommand': 'check-mrd', 'spec': GABIDULIN_F32, 'budget': 0})


class ReportTests(TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.dir = Path(self.tmp.name)

    def test_reruns_are_byte_identical(self):
        first, second = self.dir / 'a.json', self.dir / 'b.json'
        for path in (first, second):
            run({'subcommand': 'check-mrd', 'spec': GABIDULIN_F32, 'output': str(path)})
        self.assertEqual(first.read_bytes(), second.read_bytes())
        self.assertTrue(first.read_text().endswith('}\n'))

    def test_json_is_sorted(self):
        outcome = run({'subcommand': 'cm-threshold', 'dim': 2, 'deg': 3})
        self.assertEqual(outcome.text, render_json(json.loads(outcome.text)))
        self.assertEqual(list(json.loads(outcome.text)), ['input', 'result', 'subcommand', 'verdict'])

    def test_schema_rejects_malformed_report(self):
        with self.assertRaises(ReportSchemaViolation):
            validate_report({'subcommand': 'check-mrd', 'verdict': 'yes', 'result': {}})
        with self.assertRaises(ReportSchemaViolation):
            validate_report({'subcommand': 'check-mrd', 'verdict': True, 'result': {},
                             'error': {'code': 'X', 'message': 'x'}})

    def test_criterion_table_csv(self):
        outcome = run({'subcommand': 'criterion-table', 'case': '2t', 'format': 'csv'})
        self.assertEqual(outcome.exit_code, 0)
        lines = outcome.text.splitlines()
        self.assertEqual(lines[0], 'case,q,t,k,s,regime,lhs,relation,rhs,passes')
        rows = list(csv.DictReader(io.StringIO(outcome.text)))
        failing = sorted({(int(row['t']), int(row['q'])) for row in rows if row['passes'] == 'false'})
        self.assertEqual(failing, [(1, 3), (1, 4), (1, 5), (2, 3)])

    def test_spectrum_csv(self):
        outcome = run({'subcommand': 'check-mrd', 'spec': GABIDULIN_F32, 'format': 'csv'})
        rows = list(csv.reader(io.StringIO(outcome.text)))
        self.assertEqual(rows[0], ['rank', 'count'])
        self.assertEqual(min(int(rank) for rank, _ in rows[1:]), 3)
        self.assertEqual(sum(int(count) for _, count in rows[1:]), 1057)

    def test_io_failure(self):
        blocker = self.dir / 'file'
        blocker.write_text('x')
        outcome = run({'subcommand': 'cm-threshold', 'dim': 1, 'deg': 1,
                       'output': str(blocker / 'report.json')})
        self.assertEqual(outcome.exit_code, 2)
        self.assertEqual(outcome.report['error']['code'], 'IO_FAILURE')

    def test_runs_are_stored(self):
        run({'subcommand': 'cm-threshold', 'dim': 1, 'deg': 1})
        run({'subcommand': 'check-mrd', 'spec': NON_MRD_F81})
        self.assertEqual(
            list(RunReport.objects.order_by('id').values_list('subcommand', 'exit_code')),
            [('cm-threshold', 0), ('check-mrd', 1)],
        )


class CheckpointTests(TestCase):

    def config(self, **extra):
        return {'subcommand': 'check-mrd', 'spec': GABIDULIN_F32, 'chunk_size': 100,
                'workers': 1, **extra}

    def test_shards_partition_the_enumeration(self):
        full = run(self.config()).report['result']
        shards = [run(self.config(shard=f'{i}/3')).report['result'] for i in range(3)]
        self.assertEqual(sum(shard['examined'] for shard in shards), 1057)
        self.assertEqual(
            [sum(column) for column in zip(*(shard['spectrum'] for shard in shards))],
            full['spectrum'],
        )
        self.assertEqual(min(shard['d'] for shard in shards), 3)
        self.assertEqual(EnumerationCheckpoint.objects.filter(completed=True).count(), 4)

    def test_resume_after_interruption(self):
        real = dispatch.min_distance
        calls = []

        def interrupted(*args, **kwargs):
            if len(calls) == 2:
                raise BudgetExceeded("interrupted")
            calls.append(kwargs['start'])
            return real(*args, **kwargs)

        with mock.patch.object(dispatch, 'min_distance', side_effect=interrupted):
            self.assertEqual(run(self.config()).exit_code, 2)
        checkpoint = EnumerationCheckpoint.objects.get()
        self.assertEqual(checkpoint.next_index, 200)
        self.assertFalse(checkpoint.completed)
        self.assertEqual(checkpoint.remaining, 857)

        resumed = run(self.config(resume=True))
        fresh = run(self.config())
        self.assertEqual(resumed.exit_code, 0)
        self.assertEqual(resumed.report, fresh.report)

    def test_moore_shards(self):
        config = {'subcommand': 'check-moore', 'spec': GABIDULIN_F16, 'chunk_size': 500}
        results = [run(dict(config, shard=f'{i}/2')).report['result'] for i in range(2)]
        self.assertTrue(all(result['holds'] for result in results))
        self.assertEqual(sum(result['examined'] for result in results), 16 ** 3)


class ToolkitCommandTests(TestCase):

    def test_prints_report(self):
        out = io.StringIO()
        call_command('toolkit', 'cm-threshold', '--dim', '1', '--deg', '2', stdout=out)
        self.assertEqual(json.loads(out.getvalue())['result']['threshold'], 17)

    def test_false_verdict_returncode(self):
        spec = json.dumps({'field': '3^1^4', 'poly': [[0, 1], [2, 2]], 't': 1})
        with self.assertRaises(CommandError) as raised:
            call_command('toolkit', 'check-scattered', '--spec', spec, stdout=io.StringIO())
        self.assertEqual(raised.exception.returncode, 1)

    def test_spec_parse_returncode(self):
        with self.assertRaises(CommandError) as raised:
            call_command('toolkit', 'check-scattered', '--spec', '{"field": "3^1^4"}',
                         stdout=io.StringIO())
        self.assertEqual(raised.exception.returncode, 2)
        self.assertIn('SPEC_PARSE', str(raised.exception))

    def test_yaml_spec_file_and_output(self):
        with tempfile.TemporaryDirectory() as tmp:
            spec = Path(tmp) / 'code.yaml'
            spec.write_text("field: 2^1^5\ngens:\n  - [[0, 1]]\n  - [[1, 1]]\n  - [[2, 1]]\nt: 0\n")
            output = Path(tmp) / 'out' / 'report.csv'
            out = io.StringIO()
            call_command('toolkit', 'check-mrd', '--spec', str(spec), '--format', 'csv',
                         '--output', str(output), stdout=out)
            self.assertEqual(out.getvalue(), '')
            self.assertTrue(output.read_text().startswith('rank,count\n'))
