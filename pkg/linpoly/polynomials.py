"""
Linearized polynomials L(x) = sum a_i x^{q^i} over F_{q^N}, reduced mod x^{q^N} - x.
"""

import logging
from itertools import product

import numpy as np

from gf.exceptions import ContextMismatch, DegreeMismatch, ZeroPolynomial

logger = logging.getLogger(__name__)


class LinPoly:
    """
    Immutable linearized polynomial; ``coeffs[i]`` is the coefficient of x^{q^i}.
    """

    __slots__ = ('ctx', 'coeffs')

    def __init__(self, ctx, coeffs):
        coeffs = ctx.GF(np.asarray([int(c) for c in coeffs], dtype=int)) if not isinstance(coeffs, ctx.GF) else coeffs.copy()
        if coeffs.ndim != 1 or coeffs.size != ctx.N:
            raise DegreeMismatch(f"expected {ctx.N} coefficients, got {coeffs.size}")
        coeffs.setflags(write=False)
        object.__setattr__(self, 'ctx', ctx)
        object.__setattr__(self, 'coeffs', coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("LinPoly is immutable")

    @classmethod
    def from_terms(cls, ctx, terms):
        """Build from an ``{i: coeff}`` mapping; indices are reduced mod N."""
        coeffs = ctx.GF.Zeros(ctx.N)
        for i, c in dict(terms).items():
            coeffs[int(i) % ctx.N] += c if isinstance(c, ctx.GF) else ctx.GF(int(c))
        return cls(ctx, coeffs)

    @classmethod
    def monomial(cls, ctx, i, coeff=1):
        return cls.from_terms(ctx, {i: coeff})

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, ctx.GF.Zeros(ctx.N))

    def terms(self):
        """Nonzero (i, a_i) pairs in increasing i."""
        return [(i, self.coeffs[i]) for i in np.flatnonzero(self.coeffs)]

    @property
    def is_zero(self):
        return not np.any(self.coeffs)

    def __call__(self, x):
        return lp_eval(self, x)

    def __add__(self, other):
        return lp_add(self, other)

    def __sub__(self, other):
        return lp_sub(self, other)

    def __matmul__(self, other):
        return lp_compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, LinPoly):
            return NotImplemented
        return self.ctx is other.ctx and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((id(self.ctx), tuple(int(c) for c in self.coeffs)))

    def __repr__(self):
        from .literals import lp_to_literal
        return f"LinPoly({lp_to_literal(self)!r})"


def _same_ctx(L, M):
    if L.ctx is not M.ctx:
        raise ContextMismatch("linearized polynomials over different fields")


def lp_eval(L, x):
    """sum a_i x^{q^i}; vectorized over arrays of elements."""
    ctx = L.ctx
    x = ctx.check(x)
    total = x * 0
    for i, a in L.terms():
        total = total + a * ctx.frobenius(x, i)
    return total


def qdeg(L):
    if L.is_zero:
        raise ZeroPolynomial("q-degree of the zero polynomial")
    return int(np.flatnonzero(L.coeffs)[-1])


def min_qdeg(L):
    if L.is_zero:
        raise ZeroPolynomial("minimal q-degree of the zero polynomial")
    return int(np.flatnonzero(L.coeffs)[0])


def lp_add(L, M):
    _same_ctx(L, M)
    return LinPoly(L.ctx, L.coeffs + M.coeffs)


def lp_sub(L, M):
    _same_ctx(L, M)
    return LinPoly(L.ctx, L.coeffs - M.coeffs)


def lp_scale(L, c):
    c = L.ctx.check(c) if not isinstance(c, (int, np.integer)) else L.ctx.GF(int(c))
    return LinPoly(L.ctx, L.coeffs * c)


def lp_compose(L, M):
    """
    x -> L(M(x)): the coefficient of x^{q^{(i+j) mod N}} collects a_i * b_j^{q^i}.
    """
    _same_ctx(L, M)
    ctx = L.ctx
    coeffs = ctx.GF.Zeros(ctx.N)
    for i, a in L.terms():
        coeffs = coeffs + a * np.roll(ctx.frobenius(M.coeffs, i), i)
    return LinPoly(ctx, coeffs)


def lp_matrix(L):
    """
    Matrix over F_p of x -> L(x) in the polynomial basis, acting on row vectors.

    The matrix is eN x eN over the prime field F_p, not N x N over F_q; for
    prime q the two coincide. Ranks taken from it count F_p dimensions, which
    lp_rank divides by e.
    """
    ctx = L.ctx
    return lp_eval(L, ctx.basis).vector()


def lp_rank(L):
    """Rank over F_q of the induced map."""
    ctx = L.ctx
    return int(np.linalg.matrix_rank(lp_matrix(L))) // ctx.e


def kernel_dim(L):
    return L.ctx.N - lp_rank(L)


def lp_kernel(L):
    """All kernel elements, sorted by index."""
    ctx = L.ctx
    null_rows = lp_matrix(L).T.null_space()
    if null_rows.shape[0] == 0:
        return ctx.GF.Zeros(1)
    combos = ctx.prime_field(np.array(list(product(range(ctx.p), repeat=null_rows.shape[0]))))
    kernel = ctx.GF.Vector(combos @ null_rows)
    return ctx.GF(np.sort(np.asarray(kernel, dtype=int)))


def identity(ctx):
    return LinPoly.monomial(ctx, 0)


def trace_poly(ctx):
    """sum_{i<N} x^{q^i}, the relative trace to F_q."""
    return LinPoly(ctx, ctx.GF.Ones(ctx.N))
