"""
Local analysis of plane curves: points, translations, tangent cones.

A tangent cone is a binary form F(U, V); its tangents are read from the roots
of F(T, 1) together with the degree deficit, which counts the factor V.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import galois

from gf.exceptions import InvalidInput

from .exceptions import AxisIsTangent, PointNotOnCurve, UnclassifiedCone
from .instance import CurveInstance
from .mpoly import MPoly, det3

logger = logging.getLogger(__name__)

SEPARABLE = 'separable'
L_NDIV = 'power_linear_L_ndiv'
L2_NDIV = 'power_linear_L2_ndiv'
OTHER = 'other'
CONE_CLASSES = (SEPARABLE, L_NDIV, L2_NDIV, OTHER)


@dataclass(frozen=True)
class Point:
    """
    ``affine`` points carry x, y; ``infinite`` points carry xi for (1:xi:0),
    or xi=None for (0:1:0). Coordinates are element indices.
    """

    kind: str
    x: int = None
    y: int = None
    xi: int = None

    @classmethod
    def affine(cls, x, y):
        return cls('affine', int(x), int(y))

    @classmethod
    def slope(cls, xi):
        return cls('infinite', xi=int(xi))

    @classmethod
    def vertical(cls):
        return cls('infinite')

    @property
    def is_affine(self):
        return self.kind == 'affine'

    @property
    def is_vertical(self):
        return self.kind == 'infinite' and self.xi is None

    def label(self):
        if self.is_affine:
            return f"({self.x},{self.y})"
        if self.is_vertical:
            return "(0:1:0)"
        return f"(1:{self.xi}:0)"

    def as_dict(self):
        if self.is_affine:
            return {'kind': 'affine', 'x': self.x, 'y': self.y}
        return {'kind': 'infinite', 'xi': self.xi}

    @classmethod
    def from_dict(cls, data):
        if data.get('kind') == 'affine':
            return cls.affine(data['x'], data['y'])
        if data.get('kind') == 'infinite':
            return cls.vertical() if data.get('xi') is None else cls.slope(data['xi'])
        raise InvalidInput(f"unknown point kind {data.get('kind')!r}")


def _equation(curve):
    return curve.equation if isinstance(curve, CurveInstance) else curve


# ----------------------------------------------------------------------
# translations
# ----------------------------------------------------------------------

def translate_instance(instance, x, y):
    """
    C(X + x, Y + y) as a sum of four determinants, using additivity of the
    linearized entries in each row.
    """
    names = ('X', 'Y')
    row_x, row_y = instance.row_entries(0, names), instance.row_entries(1, names)
    const_x, const_y = instance.constant_row(x, names), instance.constant_row(y, names)
    row_lam = instance.constant_row(instance.lam, names)
    total = instance.equation
    if x:
        total = total + det3([const_x, row_y, row_lam])
    if y:
        total = total + det3([row_x, const_y, row_lam])
    if x and y:
        total = total + det3([const_x, const_y, row_lam])
    return total


def shift_expand(curve, x, y):
    """Homogeneous parts ``{degree: MPoly}`` of the curve translated to (x, y)."""
    if isinstance(curve, CurveInstance):
        return translate_instance(curve, x, y).homogeneous_parts()
    return curve.translate((x, y)).homogeneous_parts()


def local_equation(curve, point):
    """
    The curve in local coordinates centred at the origin.

    At (1:xi:0) the variables are (Y, Z) after X = 1 and Y -> Y + xi;
    at (0:1:0) they are (X, Z) after Y = 1.
    """
    ctx = _equation(curve).ctx
    if point.is_affine:
        x, y = ctx.GF(point.x), ctx.GF(point.y)
        if isinstance(curve, CurveInstance):
            return translate_instance(curve, x, y)
        return curve.translate((x, y))

    projective = _equation(curve).homogenize('Z')
    if point.is_vertical:
        return projective.specialize(1, ctx.one())
    dehomogenized = projective.specialize(0, ctx.one())
    return dehomogenized.translate((ctx.GF(point.xi), ctx.zero()))


def multiplicity(curve, point):
    f = local_equation(curve, point)
    if f.is_zero:
        raise InvalidInput("the zero polynomial defines no curve")
    m = f.order()
    if m == 0:
        raise PointNotOnCurve(f"{point.label()} is not on the curve")
    return m


def tangent_cone(curve, point):
    f = local_equation(curve, point)
    m = multiplicity(curve, point)
    return f.part(m)


# ----------------------------------------------------------------------
# binary forms
# ----------------------------------------------------------------------

def _is_zero_poly(poly):
    return poly.degree == 0 and poly.coeffs[0] == 0


def dehomogenized_poly(form):
    """F(T, 1) as a galois Poly and the degree of F."""
    ctx = form.ctx
    m = form.total_degree()
    coeffs = ctx.GF.Zeros(m + 1)
    for (a, _), c in form.terms.items():
        coeffs[m - a] = c
    return galois.Poly(coeffs, field=ctx.GF), m


def linear_factors(form):
    """
    Tangent slopes with multiplicity: ``[(c, mult)]`` for U - cV, and
    ``(None, mult)`` for V. Also reports whether the form splits.
    """
    if form.is_zero:
        raise InvalidInput("tangent cone of the zero form")
    poly, m = dehomogenized_poly(form)
    factors = []
    if poly.degree > 0:
        roots, mults = poly.roots(multiplicity=True)
        factors = [(root, int(mult)) for root, mult in zip(roots, mults)]
    deficit = m - poly.degree
    if deficit:
        factors.append((None, deficit))
    return factors, sum(mult for _, mult in factors) == m


def is_separable(form):
    """Square-free test: F(T, 1) has no repeated root and V divides F at most once."""
    poly, m = dehomogenized_poly(form)
    if m - poly.degree > 1:
        return False
    if poly.degree <= 1:
        return True
    derivative = poly.derivative()
    if _is_zero_poly(derivative):
        return False
    return galois.gcd(poly, derivative).degree == 0


def root_multiplicity(poly, c):
    divisor = galois.Poly([1, -c], field=poly.field)
    count = 0
    while not _is_zero_poly(poly) and poly.degree > 0:
        quotient, remainder = divmod(poly, divisor)
        if not _is_zero_poly(remainder):
            break
        poly = quotient
        count += 1
    return count


def divides_power(c, form, power):
    """Whether (U - cV)^power, or V^power when c is None, divides the binary form."""
    if form.is_zero:
        return True
    poly, m = dehomogenized_poly(form)
    if c is None:
        return m - poly.degree >= power
    return root_multiplicity(poly, c) >= power


def classify_cone(parts, m):
    """
    Class of the tangent cone F_m given the homogeneous parts of the local
    equation.
    """
    cone = parts[m]
    if is_separable(cone):
        return SEPARABLE
    factors, split = linear_factors(cone)
    if split and len(factors) == 1:
        slope, _ = factors[0]
        names = cone.names
        following = parts.get(m + 1, MPoly.zero(cone.ctx, names))
        if not divides_power(slope, following, 1):
            return L_NDIV
        if not divides_power(slope, following, 2):
            return L2_NDIV
    return OTHER


def ipmax_from_class(cone_class, m):
    """Intersection bound attached to each cone class."""
    if cone_class == SEPARABLE:
        return Fraction(m * m // 2)
    if cone_class == L_NDIV:
        return Fraction(0)
    if cone_class == L2_NDIV:
        return Fraction(m)
    raise UnclassifiedCone(f"no bound applies to a cone of class {cone_class!r} (m={m})")


# ----------------------------------------------------------------------
# quadratic transforms
# ----------------------------------------------------------------------

def quadratic_transform(f, direction):
    """
    ``'x'``: F(X, XY)/X^r, needing X=0 not tangent;
    ``'y'``: F(XY, Y)/Y^r, needing Y=0 not tangent.
    """
    if f.nvars != 2:
        raise InvalidInput("quadratic transforms act on two variables")
    r = f.order()
    if r == 0:
        raise PointNotOnCurve("origin is not on the curve")
    cone = f.part(r)
    if direction == 'x':
        if not cone.coefficient((0, r)):
            raise AxisIsTangent(f"{f.names[0]}=0 is tangent at the origin")
        return f.blow_second(r)
    if direction == 'y':
        if not cone.coefficient((r, 0)):
            raise AxisIsTangent(f"{f.names[1]}=0 is tangent at the origin")
        return f.blow_first(r)
    raise InvalidInput(f"direction must be 'x' or 'y', got {direction!r}")
