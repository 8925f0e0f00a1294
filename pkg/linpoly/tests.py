import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from gf.exceptions import ContextMismatch, ElementParseError, ZeroPolynomial
from gf.fields import field_create, field_from_string

from .literals import lp_from_literal, lp_from_pairs, lp_to_literal, lp_to_pairs
from .polynomials import (
    LinPoly, identity, kernel_dim, lp_add, lp_compose, lp_eval, lp_kernel, lp_matrix,
    lp_rank, lp_scale, lp_sub, min_qdeg, qdeg, trace_poly,
)


def random_linpoly(ctx, rng):
    return LinPoly(ctx, rng.integers(0, ctx.order, ctx.N))


class EvaluationTests(SimpleTestCase):

    def setUp(self):
        self.ctx = field_create(3, 1, 4)

    def test_monomial_at_one(self):
        for t in range(4):
            self.assertEqual(lp_eval(LinPoly.monomial(self.ctx, t), self.ctx.one()), 1)

    def test_lp_family_matches_direct_power(self):
        g = self.ctx.generator
        F = LinPoly.from_terms(self.ctx, {0: 1, 2: g})
        self.assertEqual(F(g), g + g * g ** 9)

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 80), st.integers(0, 80), st.integers(0, 2), st.integers(0, 2))
    def test_f_q_linear(self, a, b, alpha, beta):
        rng = np.random.default_rng(a * 81 + b)
        L = random_linpoly(self.ctx, rng)
        x, y = self.ctx(a), self.ctx(b)
        al, be = self.ctx(alpha), self.ctx(beta)
        self.assertEqual(L(al * x + be * y), al * L(x) + be * L(y))

    def test_vectorized_evaluation(self):
        L = LinPoly.from_terms(self.ctx, {1: 5, 3: 7})
        elements = self.ctx.elements()
        values = L(elements)
        for x, value in zip(elements[:10], values[:10]):
            self.assertEqual(L(x), value)

    def test_context_mismatch(self):
        L = identity(self.ctx)
        other = field_create(2, 1, 4)
        with self.assertRaises(ContextMismatch):
            L(other.one())
        with self.assertRaises(ContextMismatch):
            L + identity(other)


class QDegreeTests(SimpleTestCase):

    def setUp(self):
        self.ctx = field_create(3, 1, 6)

    def test_lp_shape(self):
        F = LinPoly.from_terms(self.ctx, {0: 1, 2: self.ctx.generator})
        self.assertEqual((qdeg(F), min_qdeg(F)), (2, 0))

    def test_monomial(self):
        L = LinPoly.monomial(self.ctx, 3, 4)
        self.assertEqual((qdeg(L), min_qdeg(L)), (3, 3))

    def test_curve_g_shape(self):
        G = LinPoly.from_terms(self.ctx, {2: 1, 4: self.ctx.generator})
        self.assertEqual((qdeg(G), min_qdeg(G)), (4, 2))

    def test_zero_polynomial_raises(self):
        with self.assertRaises(ZeroPolynomial):
            qdeg(LinPoly.zero(self.ctx))
        with self.assertRaises(ZeroPolynomial):
            min_qdeg(LinPoly.zero(self.ctx))


class RankTests(SimpleTestCase):

    def test_identity(self):
        ctx = field_create(2, 1, 5)
        self.assertEqual(lp_rank(identity(ctx)), 5)
        self.assertEqual(kernel_dim(identity(ctx)), 0)

    def test_frobenius_monomial_is_bijective(self):
        ctx = field_create(3, 1, 4)
        for d in range(4):
            self.assertEqual(lp_rank(LinPoly.monomial(ctx, d)), 4)

    def test_trace(self):
        ctx = field_create(3, 1, 4)
        T = trace_poly(ctx)
        self.assertEqual(lp_rank(T), 1)
        self.assertEqual(kernel_dim(T), 3)
        zeros = np.count_nonzero(T(ctx.elements()) == 0)
        self.assertEqual(zeros, 27)

    def test_matrix_shape_over_nonprime_base(self):
        ctx = field_create(2, 2, 3)
        T = trace_poly(ctx)
        self.assertEqual(lp_matrix(T).shape, (6, 6))
        self.assertEqual(lp_rank(T), 1)
        self.assertEqual(kernel_dim(T), 2)

    def test_matrix_acts_on_coefficient_vectors(self):
        ctx = field_create(2, 1, 4)
        L = LinPoly.from_terms(ctx, {0: 3, 2: 9})
        M = lp_matrix(L)
        for x in ctx.elements():
            image = ctx.GF.Vector(x.vector() @ M)
            self.assertEqual(image, L(x))

    def test_kernel_dim_matches_brute_force(self):
        ctx = field_create(2, 1, 4)
        rng = np.random.default_rng(11)
        elements = ctx.elements()
        for _ in range(10_000):
            L = random_linpoly(ctx, rng)
            zeros = np.count_nonzero(L(elements) == 0)
            self.assertEqual(zeros, 2 ** kernel_dim(L))
            self.assertEqual(lp_rank(L) + kernel_dim(L), ctx.N)

    def test_explicit_kernel(self):
        ctx = field_create(3, 1, 4)
        T = trace_poly(ctx)
        kernel = lp_kernel(T)
        self.assertEqual(len(kernel), 27)
        self.assertTrue(np.all(T(kernel) == 0))
        self.assertEqual(len(lp_kernel(identity(ctx))), 1)


class CompositionTests(SimpleTestCase):

    def setUp(self):
        self.ctx = field_create(2, 1, 5)

    def test_identity_is_neutral(self):
        L = LinPoly.from_terms(self.ctx, {1: 3, 4: 17})
        self.assertEqual(lp_compose(L, identity(self.ctx)), L)
        self.assertEqual(lp_compose(identity(self.ctx), L), L)

    def test_index_addition(self):
        Xq = LinPoly.monomial(self.ctx, 1)
        self.assertEqual(Xq @ Xq, LinPoly.monomial(self.ctx, 2))

    def test_wraps_mod_n(self):
        L = LinPoly.monomial(self.ctx, 3)
        M = LinPoly.monomial(self.ctx, 4)
        self.assertEqual(L @ M, LinPoly.monomial(self.ctx, 2))

    def test_evaluation_oracle(self):
        rng = np.random.default_rng(5)
        for _ in range(1000):
            L = random_linpoly(self.ctx, rng)
            M = random_linpoly(self.ctx, rng)
            x = self.ctx(int(rng.integers(0, 32)))
            self.assertEqual(lp_eval(lp_compose(L, M), x), L(M(x)))

    def test_degree_adds_without_wraparound(self):
        ctx = field_create(3, 1, 6)
        L = LinPoly.from_terms(ctx, {0: 1, 2: ctx.generator})
        M = LinPoly.from_terms(ctx, {1: 2, 3: 5})
        self.assertEqual(qdeg(L @ M), qdeg(L) + qdeg(M))

    def test_scale_and_subtract(self):
        L = LinPoly.from_terms(self.ctx, {1: 3})
        self.assertTrue((lp_scale(L, 2) - lp_scale(L, 2)).is_zero)
        self.assertEqual(lp_scale(L, self.ctx.one()), L)

    def test_context_rebuilt_from_spec_mixes(self):
        ctx = field_create(3, 1, 4)
        again = field_from_string(ctx.spec)
        L = LinPoly.monomial(ctx, 1)
        self.assertEqual(LinPoly.monomial(again, 1), L)
        self.assertTrue((lp_sub(L, LinPoly.monomial(again, 1))).is_zero)
        self.assertEqual(lp_add(L, identity(again)), L + identity(ctx))


class LiteralTests(SimpleTestCase):

    def setUp(self):
        self.ctx = field_create(3, 1, 4)

    def test_parse_documented_example(self):
        L = lp_from_literal(self.ctx, '1*x^q^0; g^7*x^q^2')
        self.assertEqual(L.coeffs[0], 1)
        self.assertEqual(L.coeffs[2], self.ctx.generator ** 7)
        self.assertEqual(qdeg(L), 2)

    def test_literal_and_pairs_agree(self):
        L = lp_from_literal(self.ctx, 'x^q^1; 5*x^q^3')
        self.assertEqual(lp_from_pairs(self.ctx, lp_to_pairs(L)), L)
        self.assertEqual(lp_from_literal(self.ctx, lp_to_literal(L)), L)
        self.assertEqual(lp_to_pairs(L), [[1, 1], [3, 5]])

    def test_zero_literal(self):
        self.assertTrue(lp_from_literal(self.ctx, '0').is_zero)
        self.assertEqual(lp_to_literal(LinPoly.zero(self.ctx)), '0')

    def test_bad_literal(self):
        with self.assertRaises(ElementParseError):
            lp_from_literal(self.ctx, '3*y^q^1')
        with self.assertRaises(ElementParseError):
            lp_from_pairs(self.ctx, [[1]])
