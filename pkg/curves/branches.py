"""
Branch counting by repeated quadratic transforms.
"""

import logging
from dataclasses import dataclass, field

from gf.exceptions import InvalidInput

from .exceptions import ChainBudgetExceeded, PointNotOnCurve, UnresolvedSingularity
from .instance import CurveInstance
from .local import linear_factors, local_equation
from .mpoly import MPoly

logger = logging.getLogger(__name__)

DEFAULT_MAX_STEPS = 64


@dataclass
class BranchChain:
    steps: list = field(default_factory=list)
    shifts: list = field(default_factory=list)
    polynomials: list = field(default_factory=list)
    terminal: dict = None
    blowups: int = 0

    def as_dict(self):
        return {
            'steps': self.steps,
            'shifts': [int(b) for b in self.shifts],
            'terminal': self.terminal,
            'blowups': self.blowups,
        }


def _resolve(f, chain, max_steps, on_chain):
    if f.is_zero:
        raise InvalidInput("the zero polynomial defines no curve")
    m = f.order()
    if m == 0:
        raise PointNotOnCurve("origin is not on the transformed curve")
    if m == 1:
        if on_chain:
            chain.terminal = {'multiplicity': 1, 'separable': True, 'ipmax': 0}
        return 1

    factors, split = linear_factors(f.part(m))
    if not split:
        raise UnresolvedSingularity(f"tangent cone of degree {m} does not split")
    if all(mult == 1 for _, mult in factors):
        if on_chain:
            chain.terminal = {'multiplicity': m, 'separable': True, 'ipmax': m * m // 2}
        return len(factors)

    unique = on_chain and len(factors) == 1
    total = 0
    for slope, mult in factors:
        if mult == 1:
            total += 1
            continue
        if chain.blowups >= max_steps:
            raise ChainBudgetExceeded(f"more than {max_steps} quadratic transforms")
        chain.blowups += 1
        if slope is None:
            g = f.blow_second(m)
        else:
            g = f.blow_first(m)
            if slope:
                g = g.translate((slope, f.ctx.zero()))
        if unique:
            chain.steps.append({
                'multiplicity': m,
                'tangent': 'V' if slope is None else int(slope),
            })
            if slope is not None and slope:
                chain.shifts.append(slope)
            chain.polynomials.append(g)
        total += _resolve(g, chain, max_steps, unique)
    return total


def branch_chain(curve, point=None, max_steps=None):
    """
    Branch count at a point with the chain of transforms followed while the
    tangent cone stays a power of one linear form.

    ``curve`` is a CurveInstance (with a Point) or an MPoly already centred
    at the origin.
    """
    if isinstance(curve, CurveInstance):
        if point is None:
            raise InvalidInput("a point is needed for a curve instance")
        f = local_equation(curve, point)
        if max_steps is None:
            max_steps = 4 * curve.q ** curve.t + 4
    elif isinstance(curve, MPoly):
        f = curve if point is None else local_equation(curve, point)
    else:
        raise InvalidInput(f"cannot count branches of {type(curve).__name__}")
    if max_steps is None:
        max_steps = DEFAULT_MAX_STEPS

    chain = BranchChain()
    count = _resolve(f, chain, max_steps, True)
    logger.debug("branch count %d after %d transforms", count, chain.blowups)
    return count, chain


def branch_count(curve, point=None, max_steps=None):
    count, _ = branch_chain(curve, point, max_steps)
    return count


def beta_closed_forms(instance, xi):
    """
    The first two shift constants predicted at (1:xi:0):

    b1^{q^t} = -F(lam)(xi^{q^{k-t}} - xi)^{q^t} / (lam^{q^t} delta)
    b2^{q^{2t}} = b1^{q^t(q^t-1)} [lam^{q^t}(xi^{q^k} - xi) + F(lam) b1]^{q^t} / (lam^{q^{2t}} delta^{q^t})
    """
    ctx = instance.ctx
    t, k, q = instance.t, instance.k, instance.q
    frob = ctx.frobenius
    lam, delta = instance.lam, instance.delta
    xi = ctx.check(xi)
    F_lam = instance.F(lam)

    rhs1 = -F_lam * frob(frob(xi, k - t) - xi, t) / (frob(lam, t) * delta)
    b1 = ctx.frobenius_inverse(rhs1, t)
    inner = frob(lam, t) * (frob(xi, k) - xi) + F_lam * b1
    rhs2 = frob(b1, t) ** (q ** t - 1) * frob(inner, t) / (frob(lam, 2 * t) * frob(delta, t))
    b2 = ctx.frobenius_inverse(rhs2, 2 * t)
    return b1, b2


def first_transform_coefficient(instance, xi):
    """Predicted Z-only coefficient of the first transform at (1:xi:0)."""
    ctx = instance.ctx
    frob = ctx.frobenius
    xi = ctx.check(xi)
    return -instance.C * instance.F(instance.lam) * frob(frob(xi, instance.k - instance.t) - xi, instance.t)
