"""
Known MRD families: generalized Gabidulin, twisted Gabidulin and LP polynomials.
"""

import logging
from math import gcd

from linpoly.polynomials import LinPoly

from .exceptions import GcdViolation, NormConditionViolation
from .rank_codes import RankCode

logger = logging.getLogger(__name__)


def _require_coprime(s, n, name):
    if gcd(s, n) != 1:
        raise GcdViolation(f"gcd({name}={s}, n={n}) must be 1")


def make_gabidulin(ctx, r, s):
    """G_{r,s} = <x, x^{q^s}, ..., x^{q^{s(r-1)}}>."""
    _require_coprime(s, ctx.N, 's')
    gens = [LinPoly.monomial(ctx, s * i) for i in range(r)]
    return RankCode(gens, t=0)


def make_twisted(ctx, r, s, delta):
    """
    H_{r,s}(delta) = <x^{q^s}, ..., x^{q^{s(r-1)}}, x + delta x^{q^{sr}}>,
    requiring N(delta) != (-1)^{nr}.
    """
    _require_coprime(s, ctx.N, 's')
    delta = ctx.check(delta)
    sign = ctx.one() if (ctx.N * r) % 2 == 0 else -ctx.one()
    if ctx.norm_rel(delta, 1) == sign:
        raise NormConditionViolation(f"N(delta) equals (-1)^(nr) for n={ctx.N}, r={r}")
    gens = [LinPoly.monomial(ctx, s * i) for i in range(1, r)]
    gens.append(LinPoly.from_terms(ctx, {0: 1, s * r: delta}))
    return RankCode(gens, t=s if r > 1 else None)


def make_lp(ctx, t, delta):
    """x + delta x^{q^{2t}}, scattered of index t when N(delta) != 1."""
    _require_coprime(t, ctx.N, 't')
    delta = ctx.check(delta)
    if ctx.norm_rel(delta, 1) == 1:
        raise NormConditionViolation("N(delta) = 1")
    return LinPoly.from_terms(ctx, {0: 1, 2 * t: delta})
