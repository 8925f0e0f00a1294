"""
Sparse multivariate polynomials over a field context.

Terms are kept as ``{exponent tuple: coefficient}`` with galois scalars as
coefficients; zero coefficients are never stored.
"""

import logging
from functools import lru_cache
from itertools import permutations, product
from math import comb

from gf.exceptions import ContextMismatch, InvalidInput

from .exceptions import NonExactDivision

logger = logging.getLogger(__name__)


def _digits(n, p):
    out = []
    while n:
        n, r = divmod(n, p)
        out.append(r)
    return out


@lru_cache(maxsize=4096)
def binomial_support(a, p):
    """
    Pairs (j, C(a, j) mod p) with nonzero binomial, by Lucas' theorem.

    The j run over the base-p digit-wise submasks of a.
    """
    digits = _digits(a, p)
    pairs = []
    for choice in product(*(range(d + 1) for d in digits)):
        coeff = 1
        j = 0
        for position, (d, c) in enumerate(zip(digits, choice)):
            coeff = coeff * comb(d, c) % p
            j += c * p ** position
        if coeff:
            pairs.append((j, coeff))
    return tuple(sorted(pairs))


class MPoly:

    __slots__ = ('ctx', 'names', 'terms')

    def __init__(self, ctx, terms, names=('X', 'Y')):
        self.ctx = ctx
        self.names = tuple(names)
        clean = {}
        for exps, coeff in dict(terms).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(self.names):
                raise InvalidInput(f"exponent {exps} does not match variables {self.names}")
            if coeff:
                clean[exps] = coeff if isinstance(coeff, ctx.GF) else ctx.GF(int(coeff))
        self.terms = clean

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, ctx, names=('X', 'Y')):
        return cls(ctx, {}, names)

    @classmethod
    def constant(cls, ctx, value, names=('X', 'Y')):
        return cls(ctx, {(0,) * len(names): value}, names)

    @classmethod
    def variable(cls, ctx, index, names=('X', 'Y'), power=1, coeff=1):
        exps = [0] * len(names)
        exps[index] = power
        return cls(ctx, {tuple(exps): coeff}, names)

    @classmethod
    def linear_entry(cls, L, index, names=('X', 'Y')):
        """sum a_i v^{q^i} for the linearized polynomial L in variable ``index``."""
        ctx = L.ctx
        terms = {}
        for i, a in L.terms():
            exps = [0] * len(names)
            exps[index] = ctx.q ** int(i)
            terms[tuple(exps)] = a
        return cls(ctx, terms, names)

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------

    @property
    def nvars(self):
        return len(self.names)

    @property
    def is_zero(self):
        return not self.terms

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def order(self):
        """Lowest total degree of a term, the multiplicity at the origin."""
        if not self.terms:
            raise InvalidInput("order of the zero polynomial")
        return min(sum(e) for e in self.terms)

    def degree_in(self, index):
        return max((e[index] for e in self.terms), default=-1)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.ctx.zero())

    def homogeneous_parts(self):
        """``{degree: MPoly}`` in increasing degree."""
        parts = {}
        for exps, coeff in self.terms.items():
            parts.setdefault(sum(exps), {})[exps] = coeff
        return {d: MPoly(self.ctx, parts[d], self.names) for d in sorted(parts)}

    def part(self, degree):
        return MPoly(self.ctx, {e: c for e, c in self.terms.items() if sum(e) == degree}, self.names)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        if self.ctx is not other.ctx or self.names != other.names:
            return False
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[e] == other.terms[e] for e in self.terms)

    def __hash__(self):
        return hash((self.names, frozenset((e, int(c)) for e, c in self.terms.items())))

    def __repr__(self):
        return f"MPoly({self.to_literal()!r})"

    def to_literal(self):
        if not self.terms:
            return '0'
        pieces = []
        for exps in sorted(self.terms, reverse=True):
            monomial = '*'.join(
                f"{name}^{e}" if e > 1 else name
                for name, e in zip(self.names, exps) if e
            )
            coeff = int(self.terms[exps])
            pieces.append(f"{coeff}*{monomial}" if monomial else str(coeff))
        return ' + '.join(pieces)

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------

    def _compatible(self, other):
        if self.ctx is not other.ctx:
            raise ContextMismatch("polynomials over different fields")
        if self.names != other.names:
            raise InvalidInput(f"variables {self.names} and {other.names} differ")

    def __add__(self, other):
        self._compatible(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            terms[exps] = terms[exps] + coeff if exps in terms else coeff
        return MPoly(self.ctx, terms, self.names)

    def __neg__(self):
        return MPoly(self.ctx, {e: -c for e, c in self.terms.items()}, self.names)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return self.scale(other)
        self._compatible(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                value = c1 * c2
                terms[exps] = terms[exps] + value if exps in terms else value
        return MPoly(self.ctx, terms, self.names)

    def scale(self, c):
        c = c if isinstance(c, self.ctx.GF) else self.ctx.GF(int(c))
        if not c:
            return MPoly.zero(self.ctx, self.names)
        return MPoly(self.ctx, {e: v * c for e, v in self.terms.items()}, self.names)

    def frobenius_power(self, k):
        """self^{p^k}; characteristic p makes this termwise."""
        power = self.ctx.p ** k
        return MPoly(
            self.ctx,
            {tuple(a * power for a in e): c ** power for e, c in self.terms.items()},
            self.names,
        )

    def __call__(self, *values):
        if len(values) != self.nvars:
            raise InvalidInput(f"expected {self.nvars} values, got {len(values)}")
        total = self.ctx.zero()
        for exps, coeff in self.terms.items():
            value = coeff
            for v, e in zip(values, exps):
                if e:
                    value = value * v ** e
            total = total + value
        return total

    # ------------------------------------------------------------------
    # variable manipulation
    # ------------------------------------------------------------------

    def specialize(self, index, value):
        """Substitute a constant for variable ``index`` and drop it."""
        names = self.names[:index] + self.names[index + 1:]
        terms = {}
        for exps, coeff in self.terms.items():
            c = coeff * value ** exps[index] if exps[index] else coeff
            rest = exps[:index] + exps[index + 1:]
            terms[rest] = terms[rest] + c if rest in terms else c
        return MPoly(self.ctx, terms, names)

    def homogenize(self, name='Z'):
        degree = self.total_degree()
        return MPoly(
            self.ctx,
            {e + (degree - sum(e),): c for e, c in self.terms.items()},
            self.names + (name,),
        )

    def permute(self, order, names=None):
        """Reorder variables: new variable i is old variable ``order[i]``."""
        names = tuple(names) if names else tuple(self.names[i] for i in order)
        return MPoly(
            self.ctx,
            {tuple(e[i] for i in order): c for e, c in self.terms.items()},
            names,
        )

    def translate(self, shifts):
        """
        P(x_1 + s_1, ..., x_n + s_n), expanding powers with Lucas' theorem.
        """
        if len(shifts) != self.nvars:
            raise InvalidInput(f"expected {self.nvars} shifts, got {len(shifts)}")
        ctx = self.ctx
        p = ctx.p
        terms = {}
        for exps, coeff in self.terms.items():
            factors = []
            for a, s in zip(exps, shifts):
                if not s or a == 0:
                    factors.append(((a, ctx.one()),))
                    continue
                factors.append(tuple(
                    (j, ctx.GF(b) * s ** (a - j)) for j, b in binomial_support(a, p)
                ))
            for combo in product(*factors):
                value = coeff
                for _, c in combo:
                    value = value * c
                if not value:
                    continue
                key = tuple(j for j, _ in combo)
                terms[key] = terms[key] + value if key in terms else value
        return MPoly(ctx, terms, self.names)

    # ------------------------------------------------------------------
    # exact division by a linear form
    # ------------------------------------------------------------------

    def div_linear(self, a, b, c):
        """
        Exact quotient by aX + bY + c in a two-variable polynomial.

        Synthetic division runs in Y when b != 0, otherwise in X; a
        constant divisor scales. A nonzero remainder raises NonExactDivision.
        """
        if self.nvars != 2:
            raise InvalidInput("div_linear works on polynomials in two variables")
        GF = self.ctx.GF
        a, b, c = (v if isinstance(v, GF) else GF(int(v)) for v in (a, b, c))
        if b:
            main, other, lead, slope = 1, 0, b, a
        elif a:
            main, other, lead, slope = 0, 1, a, b
        elif c:
            return self.scale(c ** -1)
        else:
            raise InvalidInput("division by the zero linear form")

        # divisor / lead = main - r(other), r = -(slope/lead) other - c/lead
        inv = lead ** -1
        r = {}
        if slope:
            r[1] = -slope * inv
        if c:
            r[0] = -c * inv

        rows = {}
        for exps, coeff in self.terms.items():
            rows.setdefault(exps[main], {})[exps[other]] = coeff
        if not rows:
            return MPoly.zero(self.ctx, self.names)

        top = max(rows)
        quotient = {}
        carry = {}
        for j in range(top, -1, -1):
            current = dict(rows.get(j, {}))
            for i, v in carry.items():
                current[i] = current[i] + v if i in current else v
            current = {i: v for i, v in current.items() if v}
            if j == 0:
                if current:
                    raise NonExactDivision(
                        f"remainder of {len(current)} terms dividing by {int(a)}X + {int(b)}Y + {int(c)}"
                    )
                break
            quotient[j - 1] = current
            carry = {}
            for i, v in current.items():
                for k, w in r.items():
                    key = i + k
                    value = v * w
                    carry[key] = carry[key] + value if key in carry else value

        terms = {}
        for j, row in quotient.items():
            for i, v in row.items():
                exps = [0, 0]
                exps[main] = j
                exps[other] = i
                terms[tuple(exps)] = v * inv
        return MPoly(self.ctx, terms, self.names)

    # ------------------------------------------------------------------
    # quadratic transforms at the origin
    # ------------------------------------------------------------------

    def blow_first(self, m):
        """f(UV, V) / V^m."""
        terms = {}
        for (a, b), coeff in self.terms.items():
            if a + b < m:
                raise NonExactDivision(f"term of degree {a + b} below {m}")
            terms[(a, a + b - m)] = coeff
        return MPoly(self.ctx, terms, self.names)

    def blow_second(self, m):
        """f(U, UV) / U^m."""
        terms = {}
        for (a, b), coeff in self.terms.items():
            if a + b < m:
                raise NonExactDivision(f"term of degree {a + b} below {m}")
            terms[(a + b - m, b)] = coeff
        return MPoly(self.ctx, terms, self.names)


def det3(rows):
    """Leibniz expansion of a 3 x 3 determinant with MPoly entries."""
    total = None
    for perm in permutations(range(3)):
        inversions = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
        term = rows[0][perm[0]] * rows[1][perm[1]] * rows[2][perm[2]]
        if inversions % 2:
            term = -term
        total = term if total is None else total + term
    return total


def moore_det(f1, f2, f3, names=('X', 'Y', 'Z')):
    """det of the rows (f1(v), f2(v), f3(v)) for v = X, Y, Z."""
    rows = [
        [MPoly.linear_entry(f, index, names) for f in (f1, f2, f3)]
        for index in range(3)
    ]
    return det3(rows)


def projective_points(ctx):
    """
    Points of P^2(F_q) as coordinate triples with last nonzero entry 1.
    """
    q_elements = ctx.subfield_elements(1)
    one = ctx.one()
    zero = ctx.zero()
    points = [(a, b, one) for a in q_elements for b in q_elements]
    points += [(a, one, zero) for a in q_elements]
    points.append((one, zero, zero))
    return points


def v_poly(ctx, names=('X', 'Y', 'Z')):
    """
    Product of the linear forms aX + bY + cZ over P^2(F_q).

    With last-nonzero normalization this equals the Moore determinant of
    (x, x^q, x^{q^2}) exactly; its degree is q^2 + q + 1.
    """
    result = MPoly.constant(ctx, 1, names)
    for a, b, c in projective_points(ctx):
        form = MPoly(ctx, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c}, names)
        result = result * form
    return result
