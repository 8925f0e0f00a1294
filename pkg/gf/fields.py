"""
Finite-field towers F_p ⊆ F_q = F_{p^e} ⊆ F_{q^N}.

Elements are galois ``FieldArray`` values (scalars or arrays) of the
context's field class; the integer value of an element is its coefficient
vector over F_p read base-p, which is also the element I/O format.
"""

import logging
import re
from functools import lru_cache
from math import gcd

import galois
import numpy as np

from .exceptions import (
    ContextMismatch, DegreeMismatch, DegreeNotDividing, ElementParseError,
    NotPrime, ReducibleModulus, ZeroPolynomial,
)

logger = logging.getLogger(__name__)

# Elements are galois field arrays; the owning FieldCtx is passed explicitly.
Felt = galois.FieldArray

FIELD_SPEC_RE = re.compile(r'^\s*(\d+)\^(\d+)\^(\d+)\s*(?::\s*modulus\s*=\s*([\d,\s]+))?\s*$')
GENERATOR_POWER_RE = re.compile(r'^\s*g\s*\^\s*(-?\d+)\s*$')


class FieldCtx:
    """
    Immutable context for F_{q^N} over F_q, q = p^e.

    Frobenius maps x -> x^{q^i} are cached as (eN x eN) matrices over F_p
    acting on coefficient row vectors.
    """

    def __init__(self, p, e, N, modulus=None):
        if not galois.is_prime(p):
            raise NotPrime(f"{p} is not prime", p=p)
        if e < 1 or N < 1:
            raise DegreeMismatch("degrees e and N must be at least 1", e=e, N=N)

        self.p = p
        self.e = e
        self.N = N
        self.q = p ** e
        self.degree = e * N
        self.order = self.q ** N
        self.prime_field = galois.GF(p)
        self.modulus = self._resolve_modulus(modulus)

        if self.degree == 1:
            self.GF = galois.GF(p)
        else:
            self.GF = galois.GF(self.order, irreducible_poly=self.modulus)
        self.generator = self.GF.primitive_element

        basis = self.GF.Vector(self.prime_field.Identity(self.degree))
        self.basis = basis
        self._frobenius = tuple(
            (basis ** (self.q ** i)).vector() for i in range(N)
        )
        logger.debug("built field ctx %s", self)

    def _resolve_modulus(self, modulus):
        if modulus is None:
            return galois.irreducible_poly(self.p, self.degree, method='min')

        coeffs = [int(c) for c in modulus]
        if len(coeffs) != self.degree + 1 or coeffs[-1] != 1:
            raise DegreeMismatch(
                f"modulus must be monic of degree {self.degree}", modulus=coeffs
            )
        if any(not 0 <= c < self.p for c in coeffs):
            raise DegreeMismatch("modulus coefficients must lie in [0, p)", modulus=coeffs)
        poly = galois.Poly(coeffs[::-1], field=galois.GF(self.p))
        if not poly.is_irreducible():
            raise ReducibleModulus(f"{poly} is reducible over F_{self.p}", modulus=coeffs)
        return poly

    def __repr__(self):
        return f"FieldCtx(p={self.p}, e={self.e}, N={self.N}, modulus={self.modulus})"

    @property
    def spec(self):
        """Field spec string ``p^e^N:modulus=c0,...,1`` that rebuilds this context."""
        coeffs = ','.join(str(int(c)) for c in self.modulus.coeffs[::-1])
        return f"{self.p}^{self.e}^{self.N}:modulus={coeffs}"

    # ------------------------------------------------------------------
    # element plumbing
    # ------------------------------------------------------------------

    def __call__(self, value):
        return self.GF(value)

    def elements(self):
        return self.GF.elements

    def zero(self):
        return self.GF(0)

    def one(self):
        return self.GF(1)

    def check(self, x):
        if type(x) is not self.GF:
            raise ContextMismatch(f"element of {type(x).__name__} used with {self!r}")
        return x

    def generator_power(self, k):
        return self.generator ** (k % (self.order - 1))

    def parse_element(self, literal):
        """Parse a decimal index or ``g^k`` literal."""
        if isinstance(literal, (int, np.integer)):
            index = int(literal)
        else:
            text = str(literal).strip()
            match = GENERATOR_POWER_RE.match(text)
            if match:
                return self.generator_power(int(match.group(1)))
            if not text.isdigit():
                raise ElementParseError(f"bad element literal {literal!r}")
            index = int(text)
        if not 0 <= index < self.order:
            raise ElementParseError(f"element index {index} outside [0, {self.order})")
        return self.GF(index)

    @staticmethod
    def format_element(x):
        return int(x)

    # ------------------------------------------------------------------
    # Frobenius, norm, subfields
    # ------------------------------------------------------------------

    def frobenius_matrix(self, i):
        return self._frobenius[i % self.N]

    def frobenius(self, x, i):
        """x^{q^i}, i reduced mod N, through the cached F_p-matrix."""
        x = self.check(x)
        i %= self.N
        if i == 0:
            return x.copy()
        shape = np.shape(x)
        vectors = np.atleast_1d(x).reshape(-1).vector()
        image = self.GF.Vector(vectors @ self._frobenius[i])
        return image.reshape(shape) if shape else image[0]

    def frobenius_inverse(self, x, i):
        """x^{q^{-i}}, the unique q^i-th root."""
        return self.frobenius(x, -i)

    def norm_rel(self, x, over_degree):
        """Relative norm to F_{q^d}: x^{(q^N - 1)/(q^d - 1)}."""
        x = self.check(x)
        if over_degree < 1 or self.N % over_degree:
            raise DegreeNotDividing(f"{over_degree} does not divide N={self.N}")
        exponent = (self.order - 1) // (self.q ** over_degree - 1)
        return x ** exponent

    def trace_rel(self, x, over_degree):
        """Relative trace to F_{q^d}: sum of x^{q^{d j}} for j < N/d."""
        x = self.check(x)
        if over_degree < 1 or self.N % over_degree:
            raise DegreeNotDividing(f"{over_degree} does not divide N={self.N}")
        total = self.GF(np.zeros(np.shape(x), dtype=int)) if np.shape(x) else self.zero()
        for j in range(self.N // over_degree):
            total = total + self.frobenius(x, over_degree * j)
        return total

    def in_subfield(self, x, d):
        """Membership in F_{q^d} ∩ F_{q^N}, vectorized over arrays."""
        x = self.check(x)
        if d < 1:
            raise DegreeMismatch("subfield degree must be at least 1", d=d)
        return self.frobenius(x, gcd(d, self.N)) == x

    def subfield_elements(self, d):
        """Elements of F_{q^d} ∩ F_{q^N} in enumeration order."""
        elements = self.GF.elements
        return elements[self.in_subfield(elements, d)]

    # ------------------------------------------------------------------
    # univariate roots
    # ------------------------------------------------------------------

    def poly_roots(self, coeffs):
        """
        All roots in F_{q^N} of sum coeffs[i] X^i, by full enumeration.

        Returned sorted by element index.
        """
        coeffs = self.GF(np.asarray([int(c) for c in coeffs], dtype=int))
        if not np.any(coeffs):
            raise ZeroPolynomial("root enumeration of the zero polynomial")
        poly = galois.Poly(coeffs[::-1], field=self.GF)
        if poly.degree == 0:
            return self.GF.elements[:0]
        return self.roots_of(poly)

    def roots_of(self, poly):
        if poly.degree == 0 and poly.coeffs[0] == 0:
            raise ZeroPolynomial("root enumeration of the zero polynomial")
        elements = self.GF.elements
        return elements[poly(elements) == 0]


@lru_cache(maxsize=64)
def _cached_field(p, e, N, modulus):
    return FieldCtx(p, e, N, modulus)


@lru_cache(maxsize=64)
def _default_modulus(p, degree):
    """Ascending coefficients of the least irreducible polynomial of this degree."""
    poly = galois.irreducible_poly(p, degree, method='min')
    return tuple(int(c) for c in poly.coeffs[::-1])


def field_create(p, e, N, modulus=None):
    """
    Build (or reuse) the context for F_{(p^e)^N}.

    The default modulus is resolved before the cache lookup, so a context
    rebuilt from its own ``spec`` is the same object.
    """
    p, e, N = int(p), int(e), int(N)
    if modulus is not None:
        key = tuple(int(c) for c in modulus)
    elif galois.is_prime(p) and e >= 1 and N >= 1:
        key = _default_modulus(p, e * N)
    else:
        key = None
    return _cached_field(p, e, N, key)


def field_from_string(spec):
    """Parse ``p^e^N[:modulus=c0,c1,...,1]`` (coefficients in ascending order)."""
    match = FIELD_SPEC_RE.match(str(spec))
    if not match:
        raise ElementParseError(f"bad field spec {spec!r}")
    p, e, N, modulus = match.groups()
    coeffs = None
    if modulus:
        coeffs = [int(c) for c in modulus.replace(' ', '').split(',') if c]
    return field_create(int(p), int(e), int(N), coeffs)


class Embedding:
    """
    Field embedding F_{q^n} -> F_{q^{nm}} sending the fixed generator of the
    small field to the least root (by index) of its minimal polynomial.
    """

    def __init__(self, small, large):
        if small.p != large.p or large.degree % small.degree:
            raise DegreeNotDividing(f"{small!r} does not embed in {large!r}")
        self.small = small
        self.large = large
        minimal = small.generator.minimal_poly()
        lifted = galois.Poly([int(c) for c in minimal.coeffs], field=large.GF)
        self.image_of_generator = large.roots_of(lifted)[0]

    def __call__(self, x):
        x = self.small.check(x)
        shape = np.shape(x)
        flat = np.atleast_1d(x).reshape(-1)
        out = self.large.GF(np.zeros(flat.size, dtype=int))
        nonzero = flat != 0
        if np.any(nonzero):
            logs = flat[nonzero].log()
            out[nonzero] = self.image_of_generator ** logs
        return out.reshape(shape) if shape else out[0]


@lru_cache(maxsize=32)
def embedding(small, large):
    return Embedding(small, large)
