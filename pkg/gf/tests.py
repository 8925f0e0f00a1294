import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from .exceptions import (
    DegreeMismatch, DegreeNotDividing, ElementParseError, NotPrime,
    ReducibleModulus, ZeroPolynomial,
)
from .fields import embedding, field_create, field_from_string


class FieldCreateTests(SimpleTestCase):

    def test_prime_field(self):
        ctx = field_create(2, 1, 1)
        self.assertEqual(ctx.order, 2)
        self.assertEqual([int(x) for x in ctx.elements()], [0, 1])

    def test_f81_has_81_distinct_elements(self):
        ctx = field_create(3, 1, 4)
        self.assertEqual(len(set(int(x) for x in ctx.elements())), 81)

    def test_f729_contains_f9(self):
        ctx = field_create(3, 1, 6)
        self.assertEqual(len(ctx.subfield_elements(2)), 9)

    def test_generator_is_primitive(self):
        ctx = field_create(3, 1, 4)
        self.assertEqual(ctx.generator.multiplicative_order(), 80)

    def test_not_prime(self):
        with self.assertRaises(NotPrime):
            field_create(4, 1, 1)

    def test_reducible_modulus(self):
        # x^2 + 1 = (x + 1)^2 over F_2
        with self.assertRaises(ReducibleModulus):
            field_create(2, 1, 2, [1, 0, 1])

    def test_modulus_degree_mismatch(self):
        with self.assertRaises(DegreeMismatch):
            field_create(2, 1, 3, [1, 1, 1])

    def test_explicit_modulus(self):
        ctx = field_create(2, 1, 2, [1, 1, 1])
        self.assertEqual(ctx.order, 4)
        self.assertEqual(ctx.spec, '2^1^2:modulus=1,1,1')

    def test_field_from_string(self):
        ctx = field_from_string('3^1^4')
        self.assertIs(ctx, field_create(3, 1, 4))
        explicit = field_from_string('2^1^2:modulus=1,1,1')
        self.assertEqual(explicit.order, 4)

    def test_spec_rebuilds_the_same_context(self):
        for args in ((3, 1, 4), (2, 2, 3), (5, 1, 1)):
            ctx = field_create(*args)
            self.assertIs(field_from_string(ctx.spec), ctx)
            self.assertIs(field_create(*args, modulus=ctx.modulus.coeffs[::-1]), ctx)

    def test_field_from_string_rejects_garbage(self):
        with self.assertRaises(ElementParseError):
            field_from_string('3^1')

    def test_tower_over_nonprime_base(self):
        ctx = field_create(2, 2, 2)
        self.assertEqual(ctx.q, 4)
        self.assertEqual(ctx.order, 16)
        self.assertEqual(len(ctx.subfield_elements(1)), 4)


class ElementLiteralTests(SimpleTestCase):

    def setUp(self):
        self.ctx = field_create(3, 1, 4)

    def test_index_literal(self):
        self.assertEqual(int(self.ctx.parse_element('17')), 17)
        self.assertEqual(int(self.ctx.parse_element(5)), 5)

    def test_generator_power_literal(self):
        x = self.ctx.parse_element('g^7')
        self.assertEqual(x, self.ctx.generator ** 7)
        self.assertEqual(self.ctx.parse_element('g^80'), self.ctx.one())

    def test_format_round_trip(self):
        x = self.ctx.parse_element('g^11')
        self.assertEqual(self.ctx.parse_element(str(self.ctx.format_element(x))), x)

    def test_out_of_range(self):
        with self.assertRaises(ElementParseError):
            self.ctx.parse_element('81')
        with self.assertRaises(ElementParseError):
            self.ctx.parse_element('x^2')


class FrobeniusTests(SimpleTestCase):

    def test_identity(self):
        ctx = field_create(3, 1, 4)
        elements = ctx.elements()
        self.assertTrue(np.array_equal(ctx.frobenius(elements, 0), elements))

    def test_fixed_field_of_q_power(self):
        ctx = field_create(3, 1, 4)
        elements = ctx.elements()
        fixed = elements[ctx.frobenius(elements, 1) == elements]
        self.assertEqual(len(fixed), 3)

    def test_matches_repeated_squaring(self):
        ctx = field_create(3, 1, 6)
        g = ctx.generator
        self.assertEqual(ctx.frobenius(g, 3), g ** 27)

    def test_matrices_compose(self):
        ctx = field_create(2, 1, 5)
        for i in range(5):
            for j in range(5):
                product = ctx.frobenius_matrix(i) @ ctx.frobenius_matrix(j)
                self.assertTrue(np.array_equal(product, ctx.frobenius_matrix(i + j)))

    def test_index_reduced_mod_n(self):
        ctx = field_create(2, 1, 5)
        x = ctx.generator ** 3
        self.assertEqual(ctx.frobenius(x, 7), ctx.frobenius(x, 2))
        self.assertEqual(ctx.frobenius_inverse(ctx.frobenius(x, 2), 2), x)

    def test_frobenius_over_f4_base(self):
        ctx = field_create(2, 2, 3)
        x = ctx.generator ** 5
        self.assertEqual(ctx.frobenius(x, 1), x ** 4)

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 728), st.integers(0, 728), st.integers(0, 5))
    def test_automorphism(self, a, b, i):
        ctx = field_create(3, 1, 6)
        x, y = ctx(a), ctx(b)
        self.assertEqual(ctx.frobenius(x + y, i), ctx.frobenius(x, i) + ctx.frobenius(y, i))
        self.assertEqual(ctx.frobenius(x * y, i), ctx.frobenius(x, i) * ctx.frobenius(y, i))

    def test_fixed_points_are_gcd_subfield(self):
        ctx = field_create(2, 1, 6)
        elements = ctx.elements()
        for i in range(1, 6):
            fixed = np.count_nonzero(ctx.frobenius(elements, i) == elements)
            self.assertEqual(fixed, 2 ** np.gcd(i, 6))


class FieldAxiomTests(SimpleTestCase):

    @settings(max_examples=300, deadline=None)
    @given(st.integers(0, 80), st.integers(0, 80), st.integers(0, 80))
    def test_ring_axioms_f81(self, a, b, c):
        ctx = field_create(3, 1, 4)
        x, y, z = ctx(a), ctx(b), ctx(c)
        self.assertEqual((x + y) + z, x + (y + z))
        self.assertEqual((x * y) * z, x * (y * z))
        self.assertEqual(x * (y + z), x * y + x * z)
        if a:
            self.assertEqual(x * (ctx.one() / x), ctx.one())

    def test_vectorized_axioms_sample(self):
        ctx = field_create(2, 1, 8)
        rng = np.random.default_rng(7)
        x, y, z = (ctx(rng.integers(0, 256, 10_000)) for _ in range(3))
        self.assertTrue(np.array_equal(x * (y + z), x * y + x * z))
        self.assertTrue(np.array_equal((x * y) * z, x * (y * z)))
        nonzero = x[x != 0]
        self.assertTrue(np.all(nonzero * nonzero ** -1 == 1))


class NormTests(SimpleTestCase):

    def setUp(self):
        self.ctx = field_create(3, 1, 4)

    def test_trivial_values(self):
        self.assertEqual(self.ctx.norm_rel(self.ctx.one(), 1), 1)
        self.assertEqual(self.ctx.norm_rel(self.ctx.zero(), 2), 0)

    def test_fibres_over_f3(self):
        nonzero = self.ctx.elements()[1:]
        norms = self.ctx.norm_rel(nonzero, 1)
        values, counts = np.unique(np.asarray(norms, dtype=int), return_counts=True)
        self.assertEqual(list(values), [1, 2])
        self.assertEqual(list(counts), [40, 40])

    def test_multiplicative_exhaustive(self):
        nonzero = self.ctx.elements()[1:]
        x = nonzero[:, None]
        y = nonzero[None, :]
        left = self.ctx.norm_rel(x * y, 1)
        right = self.ctx.norm_rel(x, 1) * self.ctx.norm_rel(y, 1)
        self.assertTrue(np.array_equal(left, right))

    def test_lands_in_subfield(self):
        norms = self.ctx.norm_rel(self.ctx.elements(), 2)
        self.assertTrue(np.all(self.ctx.in_subfield(norms, 2)))

    def test_degree_not_dividing(self):
        with self.assertRaises(DegreeNotDividing):
            self.ctx.norm_rel(self.ctx.one(), 3)

    def test_trace_is_additive_and_lands_in_base(self):
        elements = self.ctx.elements()
        traces = self.ctx.trace_rel(elements, 1)
        self.assertTrue(np.all(self.ctx.in_subfield(traces, 1)))
        # the trace map is onto F_3 with equal fibres
        _, counts = np.unique(np.asarray(traces, dtype=int), return_counts=True)
        self.assertEqual(list(counts), [27, 27, 27])


class SubfieldTests(SimpleTestCase):

    def test_zero_and_one_everywhere(self):
        ctx = field_create(3, 1, 6)
        for d in range(1, 7):
            self.assertTrue(ctx.in_subfield(ctx.zero(), d))
            self.assertTrue(ctx.in_subfield(ctx.one(), d))

    def test_generator_not_in_f9(self):
        ctx = field_create(3, 1, 6)
        self.assertFalse(ctx.in_subfield(ctx.generator, 2))

    def test_matches_power_brute_force(self):
        ctx = field_create(3, 1, 6)
        elements = ctx.elements()
        for d in (1, 2, 3, 4):
            brute = elements ** (3 ** np.gcd(d, 6)) == elements
            self.assertTrue(np.array_equal(ctx.in_subfield(elements, d), brute))

    def test_matches_embedding_image(self):
        small = field_create(3, 1, 2)
        large = field_create(3, 1, 6)
        image = embedding(small, large)(small.elements())
        self.assertEqual(
            sorted(int(x) for x in image),
            sorted(int(x) for x in large.subfield_elements(2)),
        )


class EmbeddingTests(SimpleTestCase):

    def test_homomorphism(self):
        small = field_create(2, 1, 3)
        large = field_create(2, 1, 6)
        embed = embedding(small, large)
        x = small.elements()[:, None]
        y = small.elements()[None, :]
        self.assertTrue(np.array_equal(embed(x + y), embed(x) + embed(y)))
        self.assertTrue(np.array_equal(embed(x * y), embed(x) * embed(y)))

    def test_scalar_and_prime_subfield(self):
        small = field_create(3, 1, 2)
        large = field_create(3, 1, 4)
        embed = embedding(small, large)
        self.assertEqual(embed(small.zero()), 0)
        self.assertEqual(embed(small.one()), 1)
        self.assertEqual(embed(small(2)), 2)

    def test_rejects_non_dividing_degree(self):
        with self.assertRaises(DegreeNotDividing):
            embedding(field_create(2, 1, 2), field_create(2, 1, 5))


class PolyRootsTests(SimpleTestCase):

    def test_artin_schreier_roots_are_base_field(self):
        ctx = field_create(3, 1, 4)
        coeffs = [0, -1, 0, 1]
        roots = ctx.poly_roots([ctx(c % 3) for c in coeffs])
        self.assertEqual(sorted(int(r) for r in roots), [0, 1, 2])

    def test_constant_has_no_roots(self):
        ctx = field_create(3, 1, 4)
        self.assertEqual(len(ctx.poly_roots([ctx(5)])), 0)

    def test_zero_polynomial(self):
        ctx = field_create(3, 1, 4)
        with self.assertRaises(ZeroPolynomial):
            ctx.poly_roots([0, 0])

    def test_root_count_bounded_by_degree(self):
        ctx = field_create(2, 1, 6)
        rng = np.random.default_rng(3)
        for _ in range(20):
            coeffs = list(rng.integers(0, 64, 6)) + [1]
            self.assertLessEqual(len(ctx.poly_roots(coeffs)), 6)
