from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from gf.exceptions import BudgetExceeded
from gf.fields import field_create
from linpoly.literals import lp_from_pairs
from linpoly.polynomials import LinPoly

from .branches import beta_closed_forms, branch_chain, branch_count, first_transform_coefficient
from .criterion import cafure_matera_threshold, criterion_check, criterion_threshold
from .exceptions import (
    AxisIsTangent, InvalidInstance, NonExactDivision,
    PointNotOnCurve, UnclassifiedCone,
)
from .instance import CurveInstance, choose_lambda, curve_A, curve_C, lambda_mask
from .local import (
    L2_NDIV, L_NDIV, OTHER, SEPARABLE, Point, classify_cone, ipmax_from_class,
    is_separable, linear_factors, local_equation, multiplicity, quadratic_transform,
    shift_expand, tangent_cone,
)
from .mpoly import MPoly, binomial_support, moore_det, v_poly
from .singularities import (
    affine_singularities, closed_form_parts, closure_counts, infinity_b_terms,
    infinity_points, infinity_singularities, ipmax_bound, rational_roots, sigma_bound_report,
    singular_locus_poly, w_rational_points,
)
from .tables import exclusion_set, failing_pairs, theorem_table


@lru_cache(maxsize=None)
def small_instance():
    """q=3, t=1, k=4, n=6, delta the generator, G = x^9 + x^81."""
    ctx = field_create(3, 1, 6)
    G = lp_from_pairs(ctx, [[2, 1], [4, 1]])
    return CurveInstance(ctx, t=1, k=4, case='2t', delta=ctx.generator, G=G)



@lru_cache(maxsize=None)
def half_t_instance():
    """q=3, t=2, k=5, n=8 in case t/2, G = x^3 + x^243."""
    ctx = field_create(3, 1, 8)
    G = lp_from_pairs(ctx, [[1, 1], [5, 1]])
    return CurveInstance(ctx, t=2, k=5, case='t/2', delta=ctx.generator, G=G)


def tiny_instance():
    """q=3, t=1, k=3, n=5: small enough to search every pair of F_{3^5}."""
    ctx = field_create(3, 1, 5)
    G = lp_from_pairs(ctx, [[2, 1], [3, 1]])
    return CurveInstance(ctx, t=1, k=3, case='2t', delta=ctx.generator, G=G)


def poly_strategy(max_exp=4, max_coeff=8):
    return st.dictionaries(
        st.tuples(st.integers(0, max_exp), st.integers(0, max_exp)),
        st.integers(1, max_coeff),
        max_size=5,
    )


class MPolyTests(SimpleTestCase):

    ctx = field_create(3, 1, 2)

    def make(self, terms):
        return MPoly(self.ctx, terms)

    @settings(max_examples=50, deadline=None)
    @given(poly_strategy(), poly_strategy(), poly_strategy())
    def test_distributive(self, a, b, c):
        A, B, C = self.make(a), self.make(b), self.make(c)
        self.assertEqual((A + B) * C, A * C + B * C)
        self.assertEqual(A * B, B * A)

    @settings(max_examples=50, deadline=None)
    @given(poly_strategy(max_exp=12), st.integers(0, 8), st.integers(0, 8), st.integers(0, 8), st.integers(0, 8))
    def test_translation_matches_evaluation(self, terms, u, v, x, y):
        P = self.make(terms)
        GF = self.ctx.GF
        u, v, x, y = GF(u), GF(v), GF(x), GF(y)
        self.assertEqual(P.translate((u, v))(x, y), P(x + u, y + v))

    @settings(max_examples=30, deadline=None)
    @given(poly_strategy(max_exp=12), st.integers(0, 8), st.integers(0, 8), st.integers(0, 8), st.integers(0, 8))
    def test_translation_composes(self, terms, u1, v1, u2, v2):
        P = self.make(terms)
        GF = self.ctx.GF
        first = P.translate((GF(u1), GF(v1))).translate((GF(u2), GF(v2)))
        self.assertEqual(first, P.translate((GF(u1) + GF(u2), GF(v1) + GF(v2))))

    def test_translation_by_zero_is_identity(self):
        P = self.make({(3, 1): 2, (0, 9): 5, (0, 0): 1})
        zero = self.ctx.zero()
        self.assertEqual(P.translate((zero, zero)), P)
        self.assertEqual(shift_expand(P, zero, zero), P.homogeneous_parts())

    def test_binomial_support_in_characteristic_three(self):
        # (x + 1)^9 = x^9 + 1 and (x + 1)^4 = x^4 + x^3 + x + 1 mod 3
        self.assertEqual(binomial_support(9, 3), ((0, 1), (9, 1)))
        self.assertEqual(binomial_support(4, 3), ((0, 1), (1, 1), (3, 1), (4, 1)))

    @settings(max_examples=30, deadline=None)
    @given(poly_strategy(), st.integers(0, 8), st.integers(0, 8), st.integers(0, 8))
    def test_exact_division_by_linear_form(self, terms, a, b, c):
        if a == b == c == 0:
            c = 1
        A = self.make(terms)
        GF = self.ctx.GF
        form = self.make({(1, 0): a, (0, 1): b, (0, 0): c})
        self.assertEqual((A * form).div_linear(GF(a), GF(b), GF(c)), A)

    def test_non_exact_division(self):
        P = self.make({(2, 0): 1, (0, 0): 1})
        with self.assertRaises(NonExactDivision):
            P.div_linear(0, 1, 0)

    def test_frobenius_power(self):
        P = self.make({(1, 2): 4, (0, 1): 1, (0, 0): 2})
        self.assertEqual(P.frobenius_power(1), P * P * P)

    def test_homogenize(self):
        P = self.make({(3, 1): 1, (1, 0): 2, (0, 0): 1})
        H = P.homogenize()
        self.assertEqual(H.names, ('X', 'Y', 'Z'))
        self.assertTrue(H.is_homogeneous())
        self.assertEqual(H.coefficient((1, 0, 3)), self.ctx.GF(2))
        self.assertEqual(H.specialize(2, self.ctx.one()), P)


class MooreDeterminantTests(SimpleTestCase):

    def test_alternating_and_vanishing_on_dependent_triples(self):
        ctx = field_create(2, 1, 3)
        D = moore_det(*(LinPoly.monomial(ctx, i) for i in range(3)))
        self.assertEqual(D.permute((1, 0, 2), names=D.names), -D)
        self.assertEqual(D.permute((0, 2, 1), names=D.names), -D)
        elements = ctx.elements()
        for a, b, c in product(elements, repeat=3):
            dependent = any(
                e1 * a + e2 * b + e3 * c == 0
                for e1, e2, e3 in product((0, 1), repeat=3) if (e1, e2, e3) != (0, 0, 0)
            )
            self.assertEqual(D(a, b, c) == 0, dependent)

    def test_v_poly_is_the_moore_determinant(self):
        for p in (2, 3):
            ctx = field_create(p, 1, 3)
            V = v_poly(ctx)
            self.assertEqual(V.total_degree(), p * p + p + 1)
            D = moore_det(*(LinPoly.monomial(ctx, i) for i in range(3)))
            self.assertEqual(V, D)

    def test_instance_determinant_degree(self):
        instance = small_instance()
        D = moore_det(*instance.row_polys)
        self.assertEqual(D.total_degree(), 81 + 9 + 3)


class InstanceTests(SimpleTestCase):

    def test_lambda_conditions(self):
        instance = small_instance()
        ctx = instance.ctx
        lam = instance.lam
        self.assertFalse(ctx.in_subfield(lam, 1))
        self.assertNotEqual(instance.F(lam), 0)
        self.assertNotEqual(instance.G(lam), 0)
        self.assertTrue(lambda_mask(instance, ctx.GF([int(lam)]))[0])
        self.assertEqual(choose_lambda(instance), lam)

    def test_lambda_in_base_field_rejected(self):
        ctx = field_create(3, 1, 6)
        G = lp_from_pairs(ctx, [[2, 1], [4, 1]])
        with self.assertRaises(InvalidInstance):
            CurveInstance(ctx, 1, 4, '2t', ctx.generator, G, lam=ctx.GF(2))

    def test_degrees(self):
        instance = small_instance()
        self.assertEqual(curve_C(instance).total_degree(), 90)
        self.assertEqual(curve_A(instance).total_degree(), 78)
        self.assertEqual(instance.degree_A, 78)
        self.assertEqual(instance.criterion_degree, 77)

    def test_reduced_curve_times_v_gives_c(self):
        instance = small_instance()
        V = v_poly(instance.ctx).specialize(2, instance.lam)
        self.assertEqual(curve_A(instance) * V, curve_C(instance))

    def test_invalid_instances(self):
        ctx = field_create(3, 1, 6)
        G = lp_from_pairs(ctx, [[2, 1], [4, 1]])
        with self.assertRaises(InvalidInstance):
            CurveInstance(ctx, 1, 4, '2t', ctx.one(), G)
        with self.assertRaises(InvalidInstance):
            CurveInstance(ctx, 1, 4, '2t', ctx.generator, LinPoly.monomial(ctx, 4))
        with self.assertRaises(InvalidInstance):
            CurveInstance(ctx, 1, 4, 't/2', ctx.generator, G)
        with self.assertRaises(InvalidInstance):
            CurveInstance(ctx, 1, 5, '2t', ctx.generator, lp_from_pairs(ctx, [[2, 1], [5, 1]]))

    def test_spec_round_trip(self):
        instance = small_instance()
        rebuilt = CurveInstance.from_spec(instance.spec())
        self.assertEqual(rebuilt.lam, instance.lam)
        self.assertEqual(rebuilt.G, instance.G)


class TextbookSingularityTests(SimpleTestCase):

    ctx = field_create(7, 1, 1)

    def make(self, terms):
        return MPoly(self.ctx, terms)

    def test_node(self):
        node = self.make({(0, 2): 1, (2, 0): 6, (3, 0): 6})
        origin = Point.affine(0, 0)
        self.assertEqual(multiplicity(node, origin), 2)
        self.assertTrue(is_separable(tangent_cone(node, origin)))
        transformed = quadratic_transform(node, 'x')
        GF = self.ctx.GF
        self.assertEqual(transformed(GF(0), GF(1)), 0)
        self.assertEqual(transformed(GF(0), GF(6)), 0)
        self.assertEqual(branch_count(node), 2)

    def test_cusp(self):
        cusp = self.make({(0, 2): 1, (3, 0): 6})
        self.assertEqual(branch_count(cusp), 1)
        parts = cusp.homogeneous_parts()
        self.assertEqual(classify_cone(parts, 2), L_NDIV)
        with self.assertRaises(AxisIsTangent):
            quadratic_transform(cusp, 'y')

    def test_tacnode_has_two_branches(self):
        tacnode = self.make({(0, 2): 1, (4, 0): 6})
        count, chain = branch_chain(tacnode)
        self.assertEqual(count, 2)
        self.assertEqual(chain.steps[0]['tangent'], 'V')

    def test_ordinary_triple_point(self):
        f = self.make({(2, 1): 1, (1, 2): 1, (4, 0): 1, (0, 5): 1})
        factors, split = linear_factors(f.part(3))
        self.assertTrue(split)
        self.assertEqual(len(factors), 3)
        self.assertEqual(branch_count(f), 3)
        self.assertEqual(ipmax_from_class(classify_cone(f.homogeneous_parts(), 3), 3), Fraction(4))

    def test_cone_classes(self):
        l2 = self.make({(0, 2): 1, (2, 1): 1, (4, 0): 1})
        self.assertEqual(classify_cone(l2.homogeneous_parts(), 2), L2_NDIV)
        other = self.make({(0, 2): 1, (1, 2): 1, (5, 0): 1})
        self.assertEqual(classify_cone(other.homogeneous_parts(), 2), OTHER)
        with self.assertRaises(UnclassifiedCone):
            ipmax_from_class(OTHER, 2)

    def test_simple_and_missing_points(self):
        line = self.make({(1, 0): 1, (0, 1): 6})
        self.assertEqual(multiplicity(line, Point.affine(3, 3)), 1)
        with self.assertRaises(PointNotOnCurve):
            multiplicity(line, Point.affine(1, 2))

    def test_inseparable_cone_in_characteristic_three(self):
        ctx = field_create(3, 1, 2)
        cube = MPoly(ctx, {(3, 0): 1, (0, 3): 2})
        self.assertFalse(is_separable(cube))
        square = MPoly(ctx, {(2, 0): 1, (0, 2): 2})
        self.assertTrue(is_separable(square))
        self.assertEqual(classify_cone({2: square}, 2), SEPARABLE)


class InfinityTests(SimpleTestCase):

    def test_top_form_and_points(self):
        instance = small_instance()
        points = infinity_points(instance)
        self.assertEqual(len(points), 10)
        self.assertTrue(points[-1].is_vertical)

    def test_multiplicity_dichotomy(self):
        instance = small_instance()
        ctx = instance.ctx
        for xi in ctx.subfield_elements(2):
            expected = 9 if ctx.in_subfield(xi, 1) else 6
            self.assertEqual(multiplicity(instance, Point.slope(xi)), expected)

    def test_unique_branch_and_shift_constants(self):
        instance = small_instance()
        for xi in instance.xi_set():
            count, chain = branch_chain(instance, Point.slope(xi))
            self.assertEqual(count, 1)
            b1, b2 = beta_closed_forms(instance, xi)
            self.assertEqual(chain.shifts[0], b1)
            self.assertEqual(chain.shifts[1], b2)
            first = chain.polynomials[0]
            lowest = min(b for a, b in first.terms if a == 0)
            self.assertEqual(first.coefficient((0, lowest)), first_transform_coefficient(instance, xi))
            self.assertEqual(lowest, 6)

    def test_b_terms(self):
        instance = small_instance()
        xi = instance.xi_set()[0]
        terms = infinity_b_terms(instance, xi)
        self.assertEqual(terms[6].coefficient((0,)), first_transform_coefficient(instance, xi))
        self.assertEqual(min(a for (a,) in terms[0].terms), 9)

    def test_infinity_reports(self):
        reports = infinity_singularities(small_instance())
        for report in reports:
            if report.flags['pi']:
                self.assertEqual(report.ipmax, Fraction(81, 4))
            else:
                self.assertEqual(report.branch_count, 1)
                self.assertEqual(report.ipmax, 0)

    def test_local_equation_at_vertical_point(self):
        f = local_equation(small_instance(), Point.vertical())
        self.assertEqual(f.names, ('X', 'Z'))
        self.assertGreaterEqual(f.order(), 2)


class AffineTests(SimpleTestCase):

    def test_affine_singular_points(self):
        instance = small_instance()
        reports = affine_singularities(instance)
        self.assertLessEqual(len(reports), 3 ** 6)
        self.assertTrue(reports)
        sigma = [r for r in reports if r.flags['sigma']]
        for report in reports:
            self.assertGreaterEqual(report.multiplicity, 2)
            self.assertEqual(report.ipmax, Fraction(4) if report.flags['sigma'] else Fraction(3))
        self.assertLessEqual(len(sigma), closure_counts(instance)['sigma'])

    def test_closed_forms_at_origin(self):
        instance = small_instance()
        zero = instance.ctx.zero()
        parts = shift_expand(instance, zero, zero)
        self.assertEqual(min(parts), 4)
        self.assertEqual(parts[4], closed_form_parts(instance, zero, zero)[4])

    def test_closure_counts(self):
        counts = closure_counts(small_instance())
        self.assertEqual(counts['theta'], 3 ** 6)
        self.assertLessEqual(counts['sigma'], 81)

    def test_sigma_bounds(self):
        report = sigma_bound_report(small_instance())
        self.assertLessEqual(report['theta'], report['theta_bound'])
        self.assertLessEqual(report['sigma'], report['sigma_theorem_bound'])
        self.assertIn(report['tight'], ('both', 'theorem', 'remark', 'neither'))
        self.assertEqual(report['theta_bound'], 3 ** 6)
        self.assertEqual(report['theta_ipmax'], '3')
        self.assertEqual(report['sigma_ipmax'], '4')

    def test_w_points_respect_budget(self):
        with self.assertRaises(BudgetExceeded):
            w_rational_points(small_instance(), budget=10 ** 5)

    def test_w_points_lie_on_reduced_curve(self):
        instance = tiny_instance()
        ctx = instance.ctx
        result = w_rational_points(instance, budget=243 ** 2)
        self.assertEqual(result['examined'], 243 ** 2)

        elements = ctx.elements()
        xs, ys = elements[:, None], elements[None, :]
        A = curve_A(instance)
        V = v_poly(ctx).specialize(2, instance.lam)
        hits = np.argwhere(np.asarray((A(xs, ys) == 0) & (V(xs, ys) != 0), dtype=bool))
        expected = [[int(elements[i]), int(elements[j])] for i, j in hits]
        self.assertEqual(result['points'], expected)
        self.assertEqual(result['holds'], not expected)
        for x, y in result['points'][:20]:
            self.assertEqual(A(ctx.GF(x), ctx.GF(y)), 0)


class IpmaxBoundTests(SimpleTestCase):

    def test_affine_points(self):
        instance = small_instance()
        origin = Point.affine(0, 0)
        self.assertEqual(ipmax_bound(instance, origin), Fraction(3))
        self.assertEqual(ipmax_bound(instance, origin, in_sigma=True), Fraction(4))

    def test_points_of_pi(self):
        instance = small_instance()
        self.assertEqual(ipmax_bound(instance, Point.vertical()), Fraction(81, 4))
        self.assertEqual(ipmax_bound(instance, Point.slope(1)), Fraction(81, 4))

    def test_single_branch_outside_pi(self):
        instance = small_instance()
        point = Point.slope(instance.xi_set()[0])
        bound = ipmax_bound(instance, point, cone_class=OTHER, multiplicity=6, branch_count=1)
        self.assertEqual(bound, 0)

    def test_cone_class_bounds_outside_pi(self):
        instance = small_instance()
        point = Point.slope(instance.xi_set()[0])
        for cone_class, expected in ((SEPARABLE, 18), (L_NDIV, 0), (L2_NDIV, 6)):
            bound = ipmax_bound(instance, point, cone_class=cone_class, multiplicity=6, branch_count=2)
            self.assertEqual(bound, expected)
        with self.assertRaises(UnclassifiedCone):
            ipmax_bound(instance, point, cone_class=OTHER, multiplicity=6, branch_count=2)


class HalfTCaseTests(SimpleTestCase):

    def test_degrees(self):
        instance = half_t_instance()
        self.assertEqual(instance.s, 1)
        self.assertEqual(instance.N, 8)
        self.assertEqual(instance.degree_C, 324)
        self.assertEqual(curve_A(instance).total_degree(), 312)
        self.assertEqual(instance.criterion_degree, 311)

    def test_closed_forms_at_origin(self):
        instance = half_t_instance()
        ctx = instance.ctx
        zero = ctx.zero()
        parts = shift_expand(instance, zero, zero)
        self.assertEqual(min(parts), 4)
        expected = closed_form_parts(instance, zero, zero)
        self.assertEqual(parts[4], expected[4])
        self.assertTrue(expected[3].is_zero)
        lam_t = ctx.frobenius(instance.lam, 2)
        self.assertEqual(parts[4].coefficient((1, 3)), lam_t)
        self.assertEqual(parts[4].coefficient((3, 1)), -lam_t)

    def test_closed_forms_at_singular_points(self):
        instance = half_t_instance()
        roots = rational_roots(singular_locus_poly(instance))
        empty = MPoly.zero(instance.ctx, ('X', 'Y'))
        for x in roots[:2]:
            for y in roots[:2]:
                parts = shift_expand(instance, x, y)
                self.assertGreaterEqual(min(parts), 3)
                for degree, form in closed_form_parts(instance, x, y).items():
                    self.assertEqual(parts.get(degree, empty), form)

    def test_criterion(self):
        instance = half_t_instance()
        verdict = criterion_check(instance)
        self.assertEqual(verdict.counts['theta'], 3 ** 8)
        self.assertEqual(verdict.threshold, Fraction(2, 9) * 311 ** 2)
        self.assertEqual(verdict.reduced_degree, 312)
        self.assertEqual(sigma_bound_report(instance)['theta_bound'], 3 ** 8)


class CriterionTests(SimpleTestCase):

    def test_small_instance_fails(self):
        verdict = criterion_check(small_instance())
        self.assertFalse(verdict.holds)
        self.assertEqual(verdict.threshold, Fraction(2, 9) * 77 ** 2)
        self.assertEqual(verdict.degree, 77)
        self.assertEqual(verdict.reduced_degree, 78)
        self.assertEqual(verdict.contributions['pi'], 4 * Fraction(81, 4))

    def test_q7_instance_holds(self):
        ctx = field_create(7, 1, 6)
        G = lp_from_pairs(ctx, [[2, 1], [4, 1]])
        instance = CurveInstance(ctx, 1, 4, '2t', ctx.generator, G)
        verdict = criterion_check(instance)
        self.assertTrue(verdict.holds)
        self.assertEqual(verdict.counts['theta'], 7 ** 6)

    def test_threshold_formula(self):
        self.assertEqual(criterion_threshold(27 + 9 - 13), Fraction(2, 9) * 23 ** 2)

    def test_cafure_matera(self):
        self.assertEqual(cafure_matera_threshold(1, 2), 17)
        self.assertEqual(cafure_matera_threshold(1, 1), 5)
        self.assertEqual(cafure_matera_threshold(2, 3), 59)


class TheoremTableTests(SimpleTestCase):

    def test_case_2t(self):
        self.assertEqual(failing_pairs(theorem_table('2t')), [(1, 3), (1, 4), (1, 5), (2, 3)])

    def test_case_half_t(self):
        self.assertEqual(failing_pairs(theorem_table('t/2')), [(2, 3), (2, 4), (2, 5), (4, 3)])

    def test_exclusion_set(self):
        self.assertEqual(
            exclusion_set(),
            [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (4, 3)],
        )

    def test_half_t_rows_only_for_even_t(self):
        self.assertTrue(all(row.t % 2 == 0 for row in theorem_table('t/2')))
