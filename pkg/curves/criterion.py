"""
The 2/9 criterion: if the intersection bounds over the singular points sum to
less than (2/9) deg^2, the curve has an absolutely irreducible component over
the base field.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

import galois

from gf.exceptions import InvalidInput

from .local import Point
from .singularities import closure_counts, infinity_singularities, ipmax_bound

logger = logging.getLogger(__name__)

RATIO = Fraction(2, 9)


@dataclass
class CriterionVerdict:
    total: Fraction
    threshold: Fraction
    holds: bool
    degree: int = None
    reduced_degree: int = None
    contributions: dict = field(default_factory=dict)
    counts: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            'total': str(self.total),
            'threshold': str(self.threshold),
            'holds': self.holds,
            'degree': self.degree,
            'reduced_degree': self.reduced_degree,
            'contributions': {key: str(value) for key, value in sorted(self.contributions.items())},
            'counts': dict(sorted(self.counts.items())),
        }


def criterion_threshold(degree):
    return RATIO * degree * degree


def criterion_check(instance, verify_infinity=False):
    """
    Sum the bounds over Omega minus Pi, Pi, Theta minus Sigma and Sigma.

    Affine counts are taken over the algebraic closure. With
    ``verify_infinity`` the points at infinity are analysed one by one
    instead of using the closed bounds.
    """
    q, t, k = instance.q, instance.t, instance.k
    counts = closure_counts(instance)
    theta, sigma = counts['theta'], counts['sigma']
    pi_size = q ** instance.gcd_kt + 1

    origin = Point.affine(0, 0)
    contributions = {
        'theta_minus_sigma': (theta - sigma) * ipmax_bound(instance, origin),
        'sigma': sigma * ipmax_bound(instance, origin, in_sigma=True),
        'pi': pi_size * ipmax_bound(instance, Point.vertical()),
        'omega_minus_pi': Fraction(0),
    }
    if verify_infinity:
        reports = infinity_singularities(instance)
        contributions['pi'] = sum((r.ipmax for r in reports if r.flags['pi']), Fraction(0))
        contributions['omega_minus_pi'] = sum((r.ipmax for r in reports if not r.flags['pi']), Fraction(0))

    total = sum(contributions.values(), Fraction(0))
    threshold = criterion_threshold(instance.criterion_degree)
    verdict = CriterionVerdict(
        total=total,
        threshold=threshold,
        holds=total < threshold,
        degree=instance.criterion_degree,
        reduced_degree=instance.degree_A,
        contributions=contributions,
        counts={'theta': theta, 'sigma': sigma, 'pi': pi_size, 'omega': q ** (k - 2 * t) + 1},
    )
    logger.info("criterion q=%s t=%s k=%s: %s < %s is %s", q, t, k, total, threshold, verdict.holds)
    return verdict


def cafure_matera_threshold(dim, deg):
    """Least prime power exceeding 2(dim + 1) deg^2."""
    if dim < 1 or deg < 1:
        raise InvalidInput("dimension and degree must be at least 1")
    candidate = 2 * (dim + 1) * deg * deg + 1
    while not galois.is_prime_power(candidate):
        candidate += 1
    return candidate
