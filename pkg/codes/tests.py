import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from gf.exceptions import BudgetExceeded, InvalidInput
from gf.fields import field_create
from linpoly.polynomials import LinPoly

from .enumeration import (
    batch_rank, projective_coefficients, projective_count, shard_range, tuple_indices,
)
from .exceptions import (
    DependentGenerators, GcdViolation, NormConditionViolation, RankTooLarge,
)
from .families import make_gabidulin, make_lp, make_twisted
from .rank_codes import (
    RankCode, code_create, hscattered_dimension_bound, is_moore_set, is_scattered,
    min_distance, probe_exceptional, properties13_flags, rank_spectrum, singleton_bound,
)


def random_code(ctx, r, rng):
    while True:
        gens = [LinPoly(ctx, rng.integers(0, ctx.order, ctx.N)) for _ in range(r)]
        try:
            return RankCode(gens)
        except DependentGenerators:
            continue


class EnumerationTests(SimpleTestCase):

    def test_projective_representatives(self):
        coefficients = projective_coefficients(4, 3, 0, projective_count(4, 3))
        self.assertEqual(len(coefficients), 21)
        for row in coefficients:
            lead = np.flatnonzero(row)[0]
            self.assertEqual(row[lead], 1)
        self.assertEqual(len({tuple(row) for row in coefficients}), 21)

    def test_projective_slices_concatenate(self):
        full = projective_coefficients(3, 3, 0, 13)
        parts = np.concatenate([
            projective_coefficients(3, 3, lo, min(13, lo + 4)) for lo in range(0, 13, 4)
        ])
        self.assertTrue(np.array_equal(full, parts))

    def test_tuple_indices_are_base_q(self):
        idx = tuple_indices(3, 2, 0, 9)
        self.assertEqual([tuple(row) for row in idx[:4]], [(0, 0), (0, 1), (0, 2), (1, 0)])

    def test_shards_cover_range(self):
        slices = [shard_range(10, i, 3) for i in range(3)]
        self.assertEqual(slices, [(0, 4), (4, 7), (7, 10)])

    def test_batch_rank_matches_galois(self):
        GF = field_create(3, 1, 1).GF
        rng = np.random.default_rng(1)
        matrices = rng.integers(0, 3, (200, 5, 5))
        matrices[:50, 4] = matrices[:50, 0]
        ranks = batch_rank(matrices, 3)
        expected = [np.linalg.matrix_rank(GF(m)) for m in matrices]
        self.assertEqual(list(ranks), expected)


class CodeCreateTests(SimpleTestCase):

    def test_single_generator(self):
        ctx = field_create(2, 1, 5)
        code = code_create([LinPoly.monomial(ctx, 0)], t=0)
        self.assertEqual(code.r, 1)

    def test_gabidulin_generators(self):
        ctx = field_create(2, 1, 5)
        code = code_create([LinPoly.monomial(ctx, i) for i in range(3)], t=0)
        self.assertEqual((code.q, code.n, code.r, code.t), (2, 5, 3, 0))
        self.assertTrue(code.moore_polynomial_set)

    def test_dependent(self):
        ctx = field_create(3, 1, 4)
        with self.assertRaises(DependentGenerators):
            code_create([LinPoly.monomial(ctx, 0), LinPoly.monomial(ctx, 0, 2)])

    def test_rank_too_large(self):
        ctx = field_create(2, 1, 2)
        gens = [LinPoly.monomial(ctx, i % 2, c) for i, c in enumerate((1, 2, 3, 1))]
        with self.assertRaises(RankTooLarge):
            code_create(gens)

    def test_spec_round_trip(self):
        ctx = field_create(3, 1, 4)
        code = make_twisted(ctx, 3, 1, ctx.generator)
        again = RankCode.from_spec(code.spec())
        self.assertEqual(again.gens, code.gens)
        self.assertEqual(again.t, code.t)


class MinDistanceTests(SimpleTestCase):

    def test_gabidulin_g31_over_f32(self):
        code = make_gabidulin(field_create(2, 1, 5), 3, 1)
        verdict = min_distance(code)
        self.assertEqual(verdict.examined, 1057)
        self.assertEqual(verdict.d, 3)
        self.assertTrue(verdict.is_mrd)

    def test_identity_code(self):
        ctx = field_create(3, 1, 4)
        verdict = min_distance(code_create([LinPoly.monomial(ctx, 0)]))
        self.assertEqual(verdict.d, 4)
        self.assertTrue(verdict.is_mrd)

    def test_non_mrd(self):
        ctx = field_create(3, 1, 4)
        code = code_create([LinPoly.monomial(ctx, 0), LinPoly.monomial(ctx, 2)])
        verdict = min_distance(code)
        self.assertLess(verdict.d, 3)
        self.assertFalse(verdict.is_mrd)

    def test_twisted_gabidulin_over_f81(self):
        ctx = field_create(3, 1, 4)
        code = make_twisted(ctx, 3, 1, ctx.generator)
        verdict = min_distance(code)
        self.assertEqual(verdict.examined, 6643)
        self.assertEqual(verdict.d, 2)
        self.assertTrue(verdict.is_mrd)

    def test_chunking_and_slices_agree(self):
        code = make_gabidulin(field_create(2, 1, 5), 3, 1)
        whole = min_distance(code)
        chunked = min_distance(code, chunk_size=100)
        self.assertEqual(chunked.spectrum, whole.spectrum)
        head = min_distance(code, stop=500)
        tail = min_distance(code, start=500)
        self.assertEqual(head.examined + tail.examined, 1057)
        self.assertEqual(min(head.d, tail.d), whole.d)

    def test_process_pool(self):
        code = make_gabidulin(field_create(2, 1, 5), 3, 1)
        pooled = min_distance(code, chunk_size=300, workers=2)
        self.assertEqual(pooled.d, 3)
        self.assertEqual(pooled.spectrum, min_distance(code).spectrum)

    def test_rank_spectrum_bounds(self):
        code = make_gabidulin(field_create(2, 1, 5), 3, 1)
        spectrum = rank_spectrum(code)
        self.assertEqual(sum(spectrum.values()), 1057)
        self.assertEqual(min(spectrum), 3)
        self.assertLessEqual(max(spectrum), 5)

    def test_budget(self):
        code = make_gabidulin(field_create(2, 1, 5), 3, 1)
        with self.assertRaises(BudgetExceeded):
            min_distance(code, budget=100)

    def test_scalar_multiples_share_rank(self):
        ctx = field_create(2, 1, 4)
        rng = np.random.default_rng(2)
        for _ in range(20):
            f = LinPoly(ctx, rng.integers(0, 16, 4))
            if f.is_zero:
                continue
            c = ctx(int(rng.integers(1, 16)))
            self.assertEqual(
                min_distance(code_create([f])).d,
                min_distance(code_create([LinPoly(ctx, f.coeffs * c)])).d,
            )


class ScatteredTests(SimpleTestCase):

    def test_pseudoregulus(self):
        ctx = field_create(2, 1, 5)
        self.assertTrue(is_scattered(LinPoly.monomial(ctx, 1), 0).scattered)

    def test_lp_family_every_valid_delta(self):
        ctx = field_create(3, 1, 4)
        deltas = [x for x in ctx.elements()[1:] if ctx.norm_rel(x, 1) != 1]
        self.assertEqual(len(deltas), 40)
        for delta in deltas:
            self.assertTrue(is_scattered(make_lp(ctx, 1, delta), 1).scattered)

    def test_lp_shape_fails_for_some_norm_one_delta(self):
        ctx = field_create(3, 1, 4)
        minus_one = ctx(2)
        self.assertEqual(ctx.norm_rel(minus_one, 1), 1)
        f = LinPoly.from_terms(ctx, {0: 1, 2: minus_one})
        self.assertFalse(is_scattered(f, 1).scattered)

    def test_non_scattered_monomial(self):
        ctx = field_create(3, 1, 4)
        verdict = is_scattered(LinPoly.monomial(ctx, 2), 0)
        self.assertFalse(verdict.scattered)
        self.assertEqual(verdict.witness_kernel_dim, 2)

    def test_scalar_multiple_rejected(self):
        ctx = field_create(3, 1, 4)
        with self.assertRaises(InvalidInput):
            is_scattered(LinPoly.monomial(ctx, 1, 2), 1)

    def test_scattered_iff_two_generator_code_is_mrd(self):
        ctx = field_create(3, 1, 4)
        rng = np.random.default_rng(8)
        checked = 0
        while checked < 30:
            f = LinPoly(ctx, rng.integers(0, 81, 4) * (rng.random(4) < 0.6))
            rest = [i for i, _ in f.terms() if i != 1]
            if not rest:
                continue
            code = code_create([LinPoly.monomial(ctx, 1), f], t=1)
            self.assertEqual(is_scattered(f, 1).scattered, min_distance(code).is_mrd)
            checked += 1


class MooreSetTests(SimpleTestCase):

    def test_gabidulin_over_f16(self):
        code = make_gabidulin(field_create(2, 1, 4), 3, 1)
        verdict = is_moore_set(code)
        self.assertTrue(verdict.holds)
        self.assertEqual(verdict.examined, 16 ** 3)
        self.assertTrue(min_distance(code).is_mrd)

    def test_agrees_with_min_distance_on_random_codes(self):
        ctx = field_create(2, 1, 4)
        rng = np.random.default_rng(2024)
        seen_non_mrd = False
        for _ in range(50):
            code = random_code(ctx, 3, rng)
            mrd = min_distance(code).is_mrd
            moore = is_moore_set(code)
            self.assertEqual(moore.holds, mrd)
            if not mrd:
                seen_non_mrd = True
                self.assertIsNotNone(moore.witness)
        self.assertTrue(seen_non_mrd)

    def test_witness_is_independent_zero(self):
        ctx = field_create(2, 1, 4)
        code = code_create([LinPoly.monomial(ctx, 0), LinPoly.monomial(ctx, 2), LinPoly.monomial(ctx, 1)])
        non_mrd = code_create([LinPoly.monomial(ctx, 0), LinPoly.monomial(ctx, 2),
                               LinPoly.from_terms(ctx, {1: 1, 3: 1})])
        self.assertTrue(is_moore_set(code).holds)
        verdict = is_moore_set(non_mrd)
        if not min_distance(non_mrd).is_mrd:
            self.assertFalse(verdict.holds)
            alphas = ctx.GF(verdict.witness)
            moore = ctx.GF(np.array([[int(ctx.frobenius(a, j)) for j in range(3)] for a in alphas]))
            self.assertEqual(np.linalg.matrix_rank(moore), 3)

    def test_process_pool_matches_inline(self):
        ctx = field_create(2, 1, 4)
        non_mrd = code_create([LinPoly.monomial(ctx, 0), LinPoly.monomial(ctx, 2),
                               LinPoly.from_terms(ctx, {1: 1, 3: 1})])
        inline = is_moore_set(non_mrd, chunk_size=500)
        pooled = is_moore_set(non_mrd, chunk_size=500, workers=2)
        self.assertEqual(pooled.holds, inline.holds)
        self.assertEqual(pooled.witness, inline.witness)
        self.assertEqual(pooled.examined, 16 ** 3)

    def test_budget(self):
        code = make_gabidulin(field_create(2, 1, 5), 3, 1)
        with self.assertRaises(BudgetExceeded):
            is_moore_set(code, budget=1000)


class ProbeTests(SimpleTestCase):

    def test_pseudoregulus_stays_scattered(self):
        ctx = field_create(2, 1, 3)
        results = probe_exceptional(LinPoly.monomial(ctx, 1), 0, [1, 2, 3])
        self.assertEqual([r['verdict'] for r in results], [True, True, True])

    def test_lp_over_extensions(self):
        ctx = field_create(3, 1, 4)
        mixed = False
        for delta in ctx.elements()[1:]:
            if ctx.norm_rel(delta, 1) == 1:
                continue
            verdicts = [r['verdict'] for r in probe_exceptional(make_lp(ctx, 1, delta), 1, [1, 2])]
            self.assertTrue(verdicts[0])
            if not verdicts[1]:
                mixed = True
                break
        self.assertTrue(mixed)

    def test_code_target(self):
        code = make_gabidulin(field_create(2, 1, 3), 2, 1)
        results = probe_exceptional(code, 0, [1, 2])
        self.assertEqual([r['verdict'] for r in results], [True, True])

    def test_field_budget(self):
        ctx = field_create(3, 1, 4)
        with self.assertRaises(BudgetExceeded):
            probe_exceptional(LinPoly.monomial(ctx, 1), 0, [4], field_budget=10 ** 6)


class FamilyTests(SimpleTestCase):

    def test_gabidulin_generators(self):
        ctx = field_create(2, 1, 5)
        code = make_gabidulin(ctx, 3, 1)
        self.assertEqual(list(code.gens), [LinPoly.monomial(ctx, i) for i in range(3)])

    def test_gabidulin_gcd(self):
        with self.assertRaises(GcdViolation):
            make_gabidulin(field_create(2, 1, 4), 2, 2)

    def test_twisted_norm_guard(self):
        ctx = field_create(3, 1, 4)
        with self.assertRaises(NormConditionViolation):
            make_twisted(ctx, 3, 1, ctx.one())

    def test_lp_norm_guard(self):
        ctx = field_create(3, 1, 4)
        with self.assertRaises(NormConditionViolation):
            make_lp(ctx, 1, ctx(2))
        with self.assertRaises(GcdViolation):
            make_lp(ctx, 2, ctx.generator)

    def test_gabidulin_always_mrd(self):
        for p, n, r, s in ((2, 4, 2, 1), (2, 5, 2, 2), (3, 3, 2, 1), (2, 5, 3, 3)):
            code = make_gabidulin(field_create(p, 1, n), r, s)
            self.assertTrue(min_distance(code).is_mrd)


class NormalFormTests(SimpleTestCase):

    def test_gabidulin_flags(self):
        flags = properties13_flags(make_gabidulin(field_create(2, 1, 5), 3, 1))
        self.assertTrue(all(flags.values()))

    def test_non_monic_reported(self):
        ctx = field_create(3, 1, 4)
        code = code_create([LinPoly.monomial(ctx, 1), LinPoly.from_terms(ctx, {0: 1, 2: 5})], t=1)
        flags = properties13_flags(code)
        self.assertTrue(flags['first_is_x_q_t'])
        self.assertFalse(flags['monic'])


class BoundTests(SimpleTestCase):

    def test_singleton(self):
        self.assertEqual(singleton_bound(2, 5, 3), 2 ** 15)

    @given(st.integers(1, 6), st.integers(1, 8), st.integers(1, 4))
    def test_hscattered_bound(self, r, n, h):
        self.assertEqual(hscattered_dimension_bound(r, n, h) * (h + 1), r * n)
