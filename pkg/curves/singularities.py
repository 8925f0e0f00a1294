"""
Singular points of the curve C and the bounds on their intersection numbers.

Affine singular points are the pairs of roots of the separable linearized
polynomial g with g^{q^s} = G(lam) x^{q^t} - lam^{q^t} G(x); the subset Sigma
also annihilates e(x) = delta lam^{q^t} x^{q^{2t}} - (lam + delta lam^{q^{2t}}) x^{q^t} + lam^{q^t} x.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

import galois
import numpy as np

from codes.rank_codes import RankCode, is_moore_set
from gf.exceptions import BudgetExceeded
from linpoly.polynomials import LinPoly, lp_eval, qdeg

from .branches import branch_chain
from .exceptions import ClosedFormMismatch
from .local import (
    Point, classify_cone, ipmax_from_class, local_equation, shift_expand,
)
from .mpoly import MPoly

logger = logging.getLogger(__name__)


@dataclass
class SingularityReport:
    point: Point
    multiplicity: int
    cone_class: str
    ipmax: Fraction
    branch_count: int = None
    flags: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            'point': self.point.as_dict(),
            'multiplicity': self.multiplicity,
            'cone_class': self.cone_class,
            'ipmax': str(self.ipmax),
            'branch_count': self.branch_count,
            'flags': dict(sorted(self.flags.items())),
        }


# ----------------------------------------------------------------------
# singular locus polynomials
# ----------------------------------------------------------------------

def singular_locus_poly(instance):
    """g(x) = G(lam)^{q^-s} x^{q^{t-s}} - lam^{q^{t-s}} sum c_i^{q^-s} x^{q^{i-s}}."""
    ctx = instance.ctx
    s, t = instance.s, instance.t
    lam = instance.lam
    terms = {t - s: ctx.frobenius_inverse(instance.G(lam), s)}
    lam_power = ctx.frobenius(lam, t - s)
    for i, c in instance.G.terms():
        i = int(i)
        value = -lam_power * ctx.frobenius_inverse(c, s)
        terms[i - s] = terms[i - s] + value if (i - s) in terms else value
    return LinPoly.from_terms(ctx, terms)


def sigma_poly(instance):
    ctx = instance.ctx
    t = instance.t
    lam, delta = instance.lam, instance.delta
    lam_t = ctx.frobenius(lam, t)
    return LinPoly.from_terms(ctx, {
        2 * t: delta * lam_t,
        t: -(lam + delta * ctx.frobenius(lam, 2 * t)),
        0: lam_t,
    })


def as_dense_poly(L):
    """The linearized polynomial as an ordinary galois Poly of degree q^qdeg."""
    ctx = L.ctx
    degree = ctx.q ** qdeg(L)
    coeffs = ctx.GF.Zeros(degree + 1)
    for i, c in L.terms():
        coeffs[degree - ctx.q ** int(i)] = c
    return galois.Poly(coeffs, field=ctx.GF)


def rational_roots(L):
    """Roots of L in the working field, by enumeration."""
    elements = L.ctx.elements()
    return elements[lp_eval(L, elements) == 0]


def closure_counts(instance):
    """|Theta| and |Sigma| over the algebraic closure."""
    g = as_dense_poly(singular_locus_poly(instance))
    e = as_dense_poly(sigma_poly(instance))
    common = galois.gcd(g, e).degree
    return {'theta': g.degree ** 2, 'sigma': common ** 2}


# ----------------------------------------------------------------------
# closed forms
# ----------------------------------------------------------------------

def _minor(a, b, c, d):
    return a * d - b * c


def closed_form_parts(instance, x, y):
    """
    Predicted parts of degrees q^s and q^s + 1 of C translated to (x, y).
    """
    ctx = instance.ctx
    q, t, s = instance.q, instance.t, instance.s
    lam = instance.lam
    F, G = instance.F, instance.G
    names = ('X', 'Y')

    if instance.case == '2t':
        a = _minor(F(y), G(y), F(lam), G(lam))
        b = _minor(F(x), G(x), F(lam), G(lam))
        low = MPoly(ctx, {(q ** t, 0): a, (0, q ** t): -b}, names)
        G_lam = G(lam)
        high = MPoly(ctx, {(q ** t, 1): G_lam, (1, q ** t): -G_lam}, names)
    else:
        c_s = G.coeffs[s]
        lam_t = ctx.frobenius(lam, t)
        a = _minor(ctx.frobenius(y, t), F(y), lam_t, F(lam))
        b = _minor(ctx.frobenius(x, t), F(x), lam_t, F(lam))
        low = MPoly(ctx, {(q ** s, 0): c_s * a, (0, q ** s): -c_s * b}, names)
        high = MPoly(ctx, {(1, q ** s): c_s * lam_t, (q ** s, 1): -c_s * lam_t}, names)
    return {q ** s: low, q ** s + 1: high}


def top_form_closed(instance):
    """
    lam^{q^t} delta C X^{q^{2t}} Y^{q^{2t}} prod_{xi in F_{q^{k-2t}}^*} (Y - xi X)^{q^{2t}}.
    """
    ctx = instance.ctx
    names = ('X', 'Y')
    t = instance.t
    product = MPoly.constant(ctx, 1, names)
    for xi in ctx.subfield_elements(instance.k - 2 * instance.t):
        if xi:
            product = product * MPoly(ctx, {(0, 1): 1, (1, 0): -xi}, names)
    lead = ctx.frobenius(instance.lam, t) * instance.delta * instance.C
    power = instance.q ** (2 * t)
    monomial = MPoly(ctx, {(power, power): lead}, names)
    return monomial * product.frobenius_power(instance.e * 2 * t)


def infinity_points(instance, check=True):
    """(1:xi:0) for xi in F_{q^{k-2t}}, then (0:1:0)."""
    if check:
        top = instance.equation.part(instance.degree_C)
        if top != top_form_closed(instance):
            raise ClosedFormMismatch("leading form of C differs from its factorization")
    ctx = instance.ctx
    points = [Point.slope(xi) for xi in ctx.subfield_elements(instance.k - 2 * instance.t)]
    points.append(Point.vertical())
    return points


def infinity_b_terms(instance, xi):
    """Coefficients of the powers of Z in the local equation at (1:xi:0), as polynomials in Y."""
    f = local_equation(instance, Point.slope(xi))
    grouped = {}
    for (a, b), c in f.terms.items():
        grouped.setdefault(b, {})[(a,)] = c
    return {j: MPoly(instance.ctx, grouped[j], ('Y',)) for j in sorted(grouped)}


# ----------------------------------------------------------------------
# reports
# ----------------------------------------------------------------------

def affine_bound(instance, in_sigma):
    q, s = instance.q, instance.s
    if in_sigma:
        return Fraction((q ** s + 1) ** 2, 4)
    return Fraction(q ** s)


def affine_singularities(instance, verify=True):
    """
    Reports for every affine singular point of C rational over the working field.
    """
    ctx = instance.ctx
    roots = rational_roots(singular_locus_poly(instance))
    on_sigma = set(int(r) for r in roots[lp_eval(sigma_poly(instance), roots) == 0]) if roots.size else set()
    reports = []
    for x in roots:
        for y in roots:
            parts = shift_expand(instance, x, y)
            m = min(parts)
            in_sigma = int(x) in on_sigma and int(y) in on_sigma
            point = Point.affine(x, y)
            if verify:
                _verify_affine(instance, point, parts, in_sigma)
            reports.append(SingularityReport(
                point=point,
                multiplicity=m,
                cone_class=classify_cone(parts, m),
                ipmax=ipmax_bound(instance, point, in_sigma=in_sigma),
                flags={'omega': False, 'pi': False, 'theta': True, 'sigma': in_sigma},
            ))
    logger.debug("%d affine singular points over F_{q^%d}", len(reports), ctx.N)
    return reports


def _verify_affine(instance, point, parts, in_sigma):
    ctx = instance.ctx
    q, s = instance.q, instance.s
    m = min(parts)
    if m < 2:
        raise ClosedFormMismatch(f"{point.label()} has multiplicity {m}")
    expected = closed_form_parts(instance, ctx.GF(point.x), ctx.GF(point.y))
    zero = MPoly.zero(ctx, ('X', 'Y'))
    for degree, form in expected.items():
        if parts.get(degree, zero) != form:
            raise ClosedFormMismatch(f"part of degree {degree} at {point.label()} differs")
    if (m > q ** s) != in_sigma:
        raise ClosedFormMismatch(f"Sigma membership of {point.label()} disagrees with H_(q^s)")


def in_pi(instance, point):
    if point.is_vertical:
        return True
    return bool(instance.ctx.in_subfield(instance.ctx.GF(point.xi), instance.gcd_kt))


def infinity_singularities(instance, branches=True):
    """Reports for the points at infinity; branches are counted outside Pi."""
    reports = []
    for point in infinity_points(instance):
        f = local_equation(instance, point)
        m = f.order()
        parts = f.homogeneous_parts()
        cone_class = classify_cone(parts, m)
        pi = in_pi(instance, point)
        count = None
        if branches and not pi:
            count, _ = branch_chain(instance, point)
        bound = ipmax_bound(instance, point, cone_class=cone_class, multiplicity=m, branch_count=count)
        reports.append(SingularityReport(
            point=point, multiplicity=m, cone_class=cone_class, ipmax=bound,
            branch_count=count,
            flags={'omega': True, 'pi': pi, 'theta': False, 'sigma': False},
        ))
    return reports


def ipmax_bound(instance, point, in_sigma=False, cone_class=None, multiplicity=None,
                branch_count=None):
    """
    Bound on the intersection number of two components at a singular point.

    Affine points get the Theta or Sigma bound, points of Pi get q^{4t}/4,
    and the other points at infinity get 0 for a single branch, otherwise
    the bound of their tangent-cone class.
    """
    if point.is_affine:
        return affine_bound(instance, in_sigma)
    if in_pi(instance, point):
        return Fraction(instance.q ** (4 * instance.t), 4)
    if branch_count == 1:
        return Fraction(0)
    return ipmax_from_class(cone_class, multiplicity)


def sigma_bound_report(instance):
    """Compare |Sigma| with the two available exponent bounds."""
    q, t, k = instance.q, instance.t, instance.k
    counts = closure_counts(instance)
    remark = q ** (2 * max(k - 2 * t, t))
    theorem = q ** min(max(2 * (k - 2 * t), 2 * t), 4 * t)
    sigma = counts['sigma']
    origin = Point.affine(0, 0)
    if sigma == theorem and sigma == remark:
        tight = 'both'
    elif sigma == theorem:
        tight = 'theorem'
    elif sigma == remark:
        tight = 'remark'
    else:
        tight = 'neither'
    return {
        'theta': counts['theta'],
        'theta_bound': q ** (2 * (k - instance.s)),
        'sigma': sigma,
        'sigma_remark_bound': remark,
        'sigma_theorem_bound': theorem,
        'tight': tight,
        'theta_ipmax': str(ipmax_bound(instance, origin)),
        'sigma_ipmax': str(ipmax_bound(instance, origin, in_sigma=True)),
    }


def _det3_grid(rows_x, rows_y, constants):
    """3x3 determinants with rows (r(x), r(y), c) over the grid x by y."""
    (a1, a2, a3), (b1, b2, b3), (c1, c2, c3) = rows_x, rows_y, constants
    return (a1[:, None] * (b2 * c3 - b3 * c2)[None, :]
            - a2[:, None] * (b1 * c3 - b3 * c1)[None, :]
            + a3[:, None] * (b1 * c2 - b2 * c1)[None, :])


def w_rational_points(instance, budget, full=False):
    """
    F_{q^n}-rational points of W on the plane Z = lambda that avoid V.

    Such a point (x, y) is an F_q-independent triple (x, y, lambda) killing
    det(f_i(.)), hence a point of the reduced curve A. With ``full`` every
    triple of F_{q^n}^3 is checked as well, through the Moore-set test.
    """
    ctx = instance.ctx
    elements = ctx.subfield_elements(instance.n)
    examined = elements.size ** 2
    if examined > budget:
        raise BudgetExceeded(f"q^(2n) = {examined} exceeds budget {budget}")

    rows = [lp_eval(L, elements) for L in instance.row_polys]
    powers = [ctx.frobenius(elements, j) for j in range(3)]
    lam = instance.lam
    curve = _det3_grid(rows, rows, instance.row_values(lam))
    moore = _det3_grid(powers, powers, [ctx.frobenius(lam, j) for j in range(3)])
    hits = np.argwhere(np.asarray((curve == 0) & (moore != 0), dtype=bool))
    points = [[int(elements[i]), int(elements[j])] for i, j in hits]
    result = {'holds': not points, 'points': points, 'examined': examined}

    if full:
        small = instance.small
        F_small = LinPoly.from_terms(small, {0: 1, 2 * instance.t: instance.delta_small})
        code = RankCode([LinPoly.monomial(small, instance.t), F_small, instance.G_small], t=instance.t)
        triples = is_moore_set(code, budget=budget)
        result['triples'] = triples.as_dict()
        result['holds'] = result['holds'] and triples.holds
    logger.info("W points on Z=lambda: %d off V among %d pairs", len(points), examined)
    return result
