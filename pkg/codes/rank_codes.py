"""
Rank-metric codes spanned over F_{q^n} by linearized polynomials.

A codeword sum c_i f_i is the F_q-linear map x -> sum c_i f_i(x); its weight is
the rank of that map. Minimum distance, scatteredness and the Moore-set
property are all decided by exhaustive enumeration under explicit budgets.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

import numpy as np

from gf.exceptions import BudgetExceeded, ContextMismatch, InvalidInput
from gf.fields import embedding, field_create, field_from_string
from linpoly.literals import lp_from_pairs, lp_to_pairs
from linpoly.polynomials import LinPoly, kernel_dim, lp_eval, lp_sub, lp_scale, min_qdeg, qdeg

from .enumeration import (
    batch_rank, map_ranges, projective_coefficients, projective_count, tuple_indices,
)
from .exceptions import DependentGenerators, RankTooLarge

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10 ** 7
DEFAULT_CHUNK = 2 ** 16


class RankCode:
    """F_{q^n}-span of r independent linearized polynomials."""

    def __init__(self, gens, t=None):
        gens = list(gens)
        if not gens:
            raise InvalidInput("a code needs at least one generator")
        ctx = gens[0].ctx
        if any(f.ctx is not ctx for f in gens):
            raise ContextMismatch("generators over different fields")
        self.ctx = ctx
        self.gens = tuple(gens)
        self.q = ctx.q
        self.n = ctx.N
        self.r = len(gens)

        if self.r > self.n + 1:
            raise RankTooLarge(f"r={self.r} exceeds n+1={self.n + 1}")
        coefficient_matrix = ctx.GF(np.stack([np.asarray(f.coeffs, dtype=int) for f in gens]))
        if np.linalg.matrix_rank(coefficient_matrix) < self.r:
            raise DependentGenerators("generators are F_{q^n}-linearly dependent")

        first = gens[0].terms()
        if t is None and len(first) == 1 and first[0][1] == 1:
            t = int(first[0][0])
        self.t = t

    def __repr__(self):
        return f"RankCode(q={self.q}, n={self.n}, r={self.r}, t={self.t})"

    @property
    def moore_polynomial_set(self):
        """f_1 is exactly the monomial x^{q^t}."""
        return self.t is not None and self.gens[0] == LinPoly.monomial(self.ctx, self.t)

    def spec(self):
        return {
            'field': self.ctx.spec,
            'gens': [lp_to_pairs(f) for f in self.gens],
            't': self.t,
        }

    @classmethod
    def from_spec(cls, spec):
        ctx = field_from_string(spec['field'])
        return cls([lp_from_pairs(ctx, pairs) for pairs in spec['gens']], spec.get('t'))

    def images(self):
        """(r, eN) array of f_i on the polynomial basis."""
        return np.stack([lp_eval(f, self.ctx.basis) for f in self.gens]).view(self.ctx.GF)


def code_create(gens, t=None):
    return RankCode(gens, t)


def _as_code(code_or_spec):
    if isinstance(code_or_spec, RankCode):
        return code_or_spec
    return RankCode.from_spec(code_or_spec)


# ----------------------------------------------------------------------
# minimum distance
# ----------------------------------------------------------------------

@dataclass
class MrdVerdict:
    q: int
    n: int
    r: int
    t: object = None
    d: int = None
    is_mrd: bool = None
    examined: int = 0
    witness: list = None
    spectrum: list = field(default_factory=list)

    def as_dict(self):
        return {
            'q': self.q, 'n': self.n, 'r': self.r, 't': self.t,
            'd': self.d, 'is_mrd': self.is_mrd,
            'examined': self.examined, 'witness': self.witness,
        }


def singleton_bound(q, n, d, m=None):
    """Largest size q^{n(m-d+1)} of a rank-distance-d code of n x m matrices."""
    m = n if m is None else m
    return q ** (n * (m - d + 1))


def mrd_distance(n, r):
    return n - r + 1


def hscattered_dimension_bound(r, n, h):
    """The rn/(h+1) dimension bound for h-scattered subspaces (informational only)."""
    return Fraction(r * n, h + 1)


def _distance_chunk(code_or_spec, lo, hi):
    code = _as_code(code_or_spec)
    ctx = code.ctx
    Q = ctx.order
    coefficients = projective_coefficients(Q, code.r, lo, hi)
    images = ctx.GF(coefficients) @ code.images()
    ranks = batch_rank(np.asarray(images.vector(), dtype=np.int64), ctx.p) // ctx.e
    best = int(np.argmin(ranks))
    return {
        'lo': lo,
        'd': int(ranks[best]),
        'witness': [int(c) for c in coefficients[best]],
        'examined': int(ranks.size),
        'spectrum': np.bincount(ranks, minlength=code.n + 1).tolist(),
    }


def merge_distance_chunks(code, chunks):
    """Associative min-fold; the earliest minimal codeword wins ties."""
    verdict = MrdVerdict(q=code.q, n=code.n, r=code.r, t=code.t)
    spectrum = np.zeros(code.n + 1, dtype=np.int64)
    for chunk in sorted(chunks, key=lambda c: c['lo']):
        verdict.examined += chunk['examined']
        spectrum += np.asarray(chunk['spectrum'], dtype=np.int64)
        if verdict.d is None or chunk['d'] < verdict.d:
            verdict.d = chunk['d']
            verdict.witness = chunk['witness']
    verdict.spectrum = spectrum.tolist()
    if verdict.d is not None:
        verdict.is_mrd = verdict.d == mrd_distance(code.n, code.r)
    return verdict


def min_distance(code, budget=DEFAULT_BUDGET, chunk_size=DEFAULT_CHUNK,
                 workers=1, start=0, stop=None):
    """
    Minimum rank over one representative per scalar class of nonzero codewords.

    ``start``/``stop`` restrict the scan to a slice of the projective index
    range; the verdict then covers that slice only.
    """
    if code.q ** (code.n * (code.r - 1)) > budget:
        raise BudgetExceeded(
            f"q^(n(r-1)) = {code.q ** (code.n * (code.r - 1))} exceeds budget {budget}"
        )
    total = projective_count(code.ctx.order, code.r)
    stop = total if stop is None else min(stop, total)
    target = code if workers <= 1 else code.spec()
    chunks = list(map_ranges(_distance_chunk, (target,), start, stop, chunk_size, workers))
    verdict = merge_distance_chunks(code, chunks)
    logger.info("min_distance %r: d=%s over %d codewords", code, verdict.d, verdict.examined)
    return verdict


def rank_spectrum(code, **kwargs):
    """{rank: number of projective codewords of that rank}."""
    verdict = min_distance(code, **kwargs)
    return {rank: count for rank, count in enumerate(verdict.spectrum) if count}


# ----------------------------------------------------------------------
# scattered polynomials
# ----------------------------------------------------------------------

@dataclass
class ScatteredVerdict:
    scattered: bool
    witness: int = None
    witness_kernel_dim: int = None

    def as_dict(self):
        return {
            'scattered': self.scattered,
            'witness': self.witness,
            'witness_kernel_dim': self.witness_kernel_dim,
        }


def is_scattered(f, t):
    """
    Scattered of index t: dim ker(f(x) - m x^{q^t}) <= 1 for every m.

    A nonzero x lies in that kernel exactly when m = f(x)/x^{q^t}, so the check
    counts how many nonzero x share each ratio; a kernel of dimension >= 2
    shows up as more than q - 1 of them.
    """
    ctx = f.ctx
    terms = f.terms()
    if not terms or (len(terms) == 1 and terms[0][0] == t % ctx.N):
        raise InvalidInput("f is a scalar multiple of x^{q^t}")

    nonzero = ctx.elements()[1:]
    ratios = lp_eval(f, nonzero) / ctx.frobenius(nonzero, t)
    values, counts = np.unique(np.asarray(ratios, dtype=np.int64), return_counts=True)
    crowded = values[counts > ctx.q - 1]
    if crowded.size == 0:
        return ScatteredVerdict(True)

    m = int(crowded[0])
    shifted = lp_sub(f, lp_scale(LinPoly.monomial(ctx, t), ctx(m)))
    dim = kernel_dim(shifted)
    assert dim >= 2, "ratio count and kernel dimension disagree"
    return ScatteredVerdict(False, m, dim)


# ----------------------------------------------------------------------
# Moore polynomial sets
# ----------------------------------------------------------------------

@dataclass
class MooreVerdict:
    holds: bool
    witness: list = None
    examined: int = 0

    def as_dict(self):
        return {'holds': self.holds, 'witness': self.witness, 'examined': self.examined}


def _leibniz_det(M):
    """Determinants of a stack (B, r, r) of field matrices."""
    B, r, _ = M.shape
    total = M[:, 0, 0] * 0
    for perm in permutations(range(r)):
        term = M[:, 0, perm[0]]
        for i in range(1, r):
            term = term * M[:, i, perm[i]]
        inversions = sum(1 for a in range(r) for b in range(a + 1, r) if perm[a] > perm[b])
        total = total - term if inversions % 2 else total + term
    return total


@lru_cache(maxsize=8)
def _evaluation_tables(code):
    ctx = code.ctx
    elements = ctx.elements()
    values = np.stack([lp_eval(f, elements) for f in code.gens]).view(ctx.GF)
    powers = np.stack([ctx.frobenius(elements, j) for j in range(code.r)]).view(ctx.GF)
    return values, powers


def _moore_chunk(code_or_spec, lo, hi):
    code = _as_code(code_or_spec)
    values, powers = _evaluation_tables(code)
    idx = tuple_indices(code.ctx.order, code.r, lo, hi)
    M = values[:, idx].transpose(1, 2, 0)
    moore = powers[:, idx].transpose(1, 2, 0)
    violating = np.flatnonzero((_leibniz_det(M) == 0) & (_leibniz_det(moore) != 0))
    witness = [int(a) for a in idx[violating[0]]] if violating.size else None
    return {'lo': lo, 'witness': witness, 'examined': hi - lo}


def is_moore_set(code, budget=DEFAULT_BUDGET, chunk_size=DEFAULT_CHUNK,
                 workers=1, start=0, stop=None):
    """
    det(f_j(alpha_i)) = 0 must force alpha_1..alpha_r to be F_q-dependent.

    Independence is read off the Moore determinant det(alpha_i^{q^j}).
    """
    total = code.ctx.order ** code.r
    if total > budget:
        raise BudgetExceeded(f"q^(nr) = {total} exceeds budget {budget}")
    stop = total if stop is None else min(stop, total)
    target = code if workers <= 1 else code.spec()
    verdict = MooreVerdict(True)
    for chunk in map_ranges(_moore_chunk, (target,), start, stop, chunk_size, workers):
        verdict.examined += chunk['examined']
        if chunk['witness'] is not None and verdict.witness is None:
            verdict.holds = False
            verdict.witness = chunk['witness']
    logger.info("is_moore_set %r: holds=%s after %d tuples", code, verdict.holds, verdict.examined)
    return verdict


# ----------------------------------------------------------------------
# exceptionality probes
# ----------------------------------------------------------------------

def lift(f, large):
    """Re-embed the coefficients of f into a larger field."""
    embed = embedding(f.ctx, large)
    return LinPoly.from_terms(large, {i: embed(c) for i, c in f.terms()})


def probe_exceptional(target, t, extensions, field_budget=10 ** 6, budget=DEFAULT_BUDGET):
    """
    Recheck scatteredness (LinPoly target) or MRD-ness (RankCode target) over
    F_{q^{nm}} for each m in ``extensions``.
    """
    base = target.ctx
    results = []
    for m in extensions:
        order = base.q ** (base.N * m)
        if order > field_budget:
            raise BudgetExceeded(f"q^(nm) = {order} exceeds field budget {field_budget}", m=m)
        large = field_create(base.p, base.e, base.N * m)
        if isinstance(target, RankCode):
            code = RankCode([lift(f, large) for f in target.gens], target.t)
            verdict = min_distance(code, budget=budget)
            results.append({'m': m, 'verdict': verdict.is_mrd, 'd': verdict.d,
                            'witness': verdict.witness})
        else:
            verdict = is_scattered(lift(target, large), t)
            results.append({'m': m, 'verdict': verdict.scattered, 'witness': verdict.witness})
        logger.info("probe m=%d verdict=%s", m, results[-1]['verdict'])
    return results


# ----------------------------------------------------------------------
# normal form
# ----------------------------------------------------------------------

def properties13_flags(code):
    """
    Report which normal-form conditions the generator list satisfies.

    Nothing is canonicalized; the flags are informational.
    """
    t = code.t
    max_degrees = [qdeg(f) for f in code.gens]
    min_degrees = [min_qdeg(f) for f in code.gens]
    monomial = [len(f.terms()) == 1 for f in code.gens]
    return {
        'first_is_x_q_t': code.moore_polynomial_set,
        'independent': True,
        'distinct_max_qdeg': len(set(max_degrees)) == code.r,
        'distinct_min_qdeg_with_zero': len(set(min_degrees)) == code.r and 0 in min_degrees,
        'monic': all(f.coeffs[qdeg(f)] == 1 for f in code.gens),
        'monomials_above_t': t is not None and all(
            lo >= t for lo, mono in zip(min_degrees, monomial) if mono
        ),
    }
