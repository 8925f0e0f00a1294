"""
Curve instances built from x^{q^t}, F(x) = x + delta x^{q^{2t}} and G.

All computations run in the working field F_{q^N}, N = lcm(n, k - 2t),
which holds every slope at infinity and every shift constant.
"""

import logging
from functools import cached_property
from math import gcd, lcm

import numpy as np

from gf.exceptions import InvalidInput
from gf.fields import embedding, field_create
from linpoly.literals import lp_from_spec, lp_to_pairs
from linpoly.polynomials import LinPoly, lp_eval, min_qdeg, qdeg

from .exceptions import InvalidInstance, NoLambdaFound
from .mpoly import MPoly, det3, projective_points

logger = logging.getLogger(__name__)

CASES = ('2t', 't/2')
MAX_EXPONENT = 2 ** 20
XI_SET_READING = 'F_{q^{k-2t}} minus F_{q^{gcd(k,t)}}'


class CurveInstance:

    def __init__(self, small, t, k, case, delta, G, lam=None):
        self.small = small
        self.p, self.e, self.q, self.n = small.p, small.e, small.q, small.N
        self.t, self.k, self.case = int(t), int(k), case
        self._validate(delta, G)

        self.N = lcm(self.n, self.k - 2 * self.t)
        self.ctx = small if self.N == self.n else field_create(self.p, self.e, self.N)
        embed = embedding(small, self.ctx) if self.ctx is not small else None

        def lift(x):
            return embed(x) if embed is not None else x

        self.delta_small = delta
        self.G_small = G
        self.delta = lift(delta)
        self.G = LinPoly.from_terms(self.ctx, {i: lift(c) for i, c in G.terms()})
        self.F = LinPoly.from_terms(self.ctx, {0: 1, 2 * self.t: self.delta})
        self.X_qt = LinPoly.monomial(self.ctx, self.t)
        self.C = self.G.coeffs[self.k]
        self.s = self.t if case == '2t' else self.t // 2
        self.gcd_kt = gcd(self.k, self.t)

        self.lam = choose_lambda(self) if lam is None else self._check_lambda(lift(lam))
        logger.debug("instance q=%s t=%s k=%s n=%s N=%s lambda=%s",
                     self.q, self.t, self.k, self.n, self.N, int(self.lam))

    def _validate(self, delta, G):
        q, t, k, n = self.q, self.t, self.k, self.n
        if self.case not in CASES:
            raise InvalidInstance(f"case must be one of {CASES}, got {self.case!r}")
        if not 0 < 2 * t < k < n:
            raise InvalidInstance(f"need 0 < 2t < k < n, got t={t}, k={k}, n={n}")
        if n < k + t + 1:
            raise InvalidInstance(f"need n >= k + t + 1, got n={n}")
        if self.case == 't/2' and t % 2:
            raise InvalidInstance("case t/2 needs t even")
        self.small.check(delta)
        if self.small.norm_rel(delta, 1) == 1:
            raise InvalidInstance("N(delta) = 1")
        if G.ctx is not self.small:
            raise InvalidInstance("G must be defined over F_{q^n}")
        if len(G.terms()) < 2:
            raise InvalidInstance("G needs at least two terms")
        if qdeg(G) != k:
            raise InvalidInstance(f"q-degree of G is {qdeg(G)}, expected k={k}")
        low = 2 * t if self.case == '2t' else t // 2
        if min_qdeg(G) != low:
            raise InvalidInstance(f"minimal q-degree of G is {min_qdeg(G)}, expected {low}")
        if q ** k > MAX_EXPONENT:
            raise InvalidInstance(f"q^k = {q ** k} exceeds the exponent guard")

    def _check_lambda(self, lam):
        if not lambda_mask(self, self.ctx.GF([int(lam)]))[0]:
            raise InvalidInstance(f"lambda={int(lam)} violates the choice conditions")
        return self.ctx.GF(int(lam))

    def __repr__(self):
        return (f"CurveInstance(q={self.q}, t={self.t}, k={self.k}, n={self.n}, "
                f"case={self.case!r}, N={self.N})")

    # ------------------------------------------------------------------
    # specs
    # ------------------------------------------------------------------

    @classmethod
    def from_spec(cls, spec):
        small = field_create(spec['p'], spec.get('e', 1), spec['n'], spec.get('modulus'))
        delta = small.parse_element(spec['delta'])
        G = lp_from_spec(small, spec['G_coeffs'])
        lam = spec.get('lambda')
        lam = small.parse_element(lam) if lam is not None else None
        return cls(small, spec['t'], spec['k'], spec.get('case', '2t'), delta, G, lam)

    def spec(self):
        return {
            'p': self.p, 'e': self.e, 'n': self.n, 't': self.t, 'k': self.k,
            'case': self.case,
            'delta': int(self.delta_small),
            'G_coeffs': lp_to_pairs(self.G_small),
        }

    # ------------------------------------------------------------------
    # rows of the determinant
    # ------------------------------------------------------------------

    @property
    def row_polys(self):
        return (self.X_qt, self.F, self.G)

    def row_values(self, v):
        return tuple(lp_eval(L, v) for L in self.row_polys)

    def row_entries(self, index, names=('X', 'Y')):
        return [MPoly.linear_entry(L, index, names) for L in self.row_polys]

    def constant_row(self, v, names=('X', 'Y')):
        return [MPoly.constant(self.ctx, value, names) for value in self.row_values(v)]

    @property
    def degree_C(self):
        return self.q ** self.k + self.q ** (2 * self.t)

    @property
    def degree_A(self):
        """Degree of the reduced curve; the Z-only line of V contributes the constant lambda."""
        q = self.q
        return self.degree_C - (q * q + q)

    @property
    def criterion_degree(self):
        """deg C - (q^2 + q + 1), one below deg A; the criterion threshold is built on it."""
        q = self.q
        return self.degree_C - (q * q + q + 1)

    @cached_property
    def equation(self):
        return det3([self.row_entries(0), self.row_entries(1), self.constant_row(self.lam)])

    @cached_property
    def reduced_equation(self):
        reduced = self.equation
        for a, b, c in projective_points(self.ctx):
            reduced = reduced.div_linear(a, b, c * self.lam)
        if reduced.total_degree() != self.degree_A:
            raise InvalidInstance(
                f"reduced degree {reduced.total_degree()} differs from {self.degree_A}"
            )
        return reduced

    def xi_set(self):
        """Slopes xi in F_{q^{k-2t}} outside F_{q^{gcd(k,t)}}."""
        slopes = self.ctx.subfield_elements(self.k - 2 * self.t)
        return slopes[~self.ctx.in_subfield(slopes, self.gcd_kt)]


def lambda_mask(instance, candidates):
    """Vectorized choice conditions on an array of candidate lambdas."""
    ctx = instance.ctx
    t, k = instance.t, instance.k
    frob = ctx.frobenius

    F_val = lp_eval(instance.F, candidates)
    G_val = lp_eval(instance.G, candidates)
    mask = ~ctx.in_subfield(candidates, 1) & (F_val != 0) & (G_val != 0)
    F_pow = frob(F_val, t) * F_val
    lam_pow = frob(candidates, 2 * t) * frob(candidates, t)

    for xi in instance.xi_set():
        A = frob(xi - frob(xi, t), k + t) * frob(frob(xi, k - t) - xi, t)
        w = frob(xi, k) - xi
        D = frob(w, 2 * t) * frob(w, t)
        value = A * F_pow + instance.delta * D * lam_pow
        mask &= value != 0
    return np.asarray(mask, dtype=bool)


def choose_lambda(instance):
    """First lambda of F_{q^n}, in enumeration order, meeting every choice condition."""
    candidates = instance.ctx.subfield_elements(instance.n)
    mask = lambda_mask(instance, candidates)
    hits = np.flatnonzero(mask)
    if hits.size == 0:
        raise NoLambdaFound(f"no admissible lambda in F_{{q^{instance.n}}}", q=instance.q)
    lam = candidates[hits[0]]
    logger.info("chose lambda=%s (q=%s, t=%s, k=%s)", int(lam), instance.q, instance.t, instance.k)
    return lam


def curve_C(instance):
    return instance.equation


def curve_A(instance):
    return instance.reduced_equation


def parse_instance(spec):
    if isinstance(spec, CurveInstance):
        return spec
    if not isinstance(spec, dict):
        raise InvalidInput("curve instance spec must be a mapping")
    return CurveInstance.from_spec(spec)
