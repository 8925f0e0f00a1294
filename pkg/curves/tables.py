"""
Exact evaluation of the inequality case analyses behind the non-existence
results, over finite ranges of (q, t, k).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import galois

from gf.exceptions import InvalidInput

from .criterion import RATIO

logger = logging.getLogger(__name__)

DEFAULT_Q = tuple(q for q in range(3, 14) if galois.is_prime_power(q))
DEFAULT_T = tuple(range(1, 7))
DEFAULT_K_MAX = 30
CSV_HEADER = ('case', 'q', 't', 'k', 's', 'regime', 'lhs', 'relation', 'rhs', 'passes')


@dataclass(frozen=True)
class TableRow:
    case: str
    q: int
    t: int
    k: int
    s: int
    regime: str
    lhs: Fraction
    relation: str
    rhs: Fraction
    passes: bool

    def as_dict(self):
        return {
            'case': self.case, 'q': self.q, 't': self.t, 'k': self.k, 's': self.s,
            'regime': self.regime, 'lhs': str(self.lhs), 'relation': self.relation,
            'rhs': str(self.rhs), 'passes': self.passes,
        }


def _compare(lhs, relation, rhs):
    if relation == '<=':
        return lhs <= rhs
    if relation == '<':
        return lhs < rhs
    return lhs > rhs


def _row_2t(q, t, k):
    s = gcd(k, t)
    Q = Fraction(q)
    if k > 3 * t and t >= 2:
        lhs = Fraction(5, 4) * Q ** max(2 * k - t, 6 * t)
        rhs = RATIO * Q ** (2 * k)
        return 'k>3t', lhs, '<=', rhs, q ** (2 * t) > q * q + q + 1
    if k > 3 * t:
        lhs = RATIO - 1 / Q - 4 * (Q + 1) / (9 * Q ** k) - 1 / (4 * Q ** 2)
        return 'k>3t,t=1', lhs, '>', Fraction(0), True
    if k == 3 * t and t >= 2:
        lhs = Fraction(5, 4) * Q ** (5 * t) + Q ** (4 * t) / 2
        return 'k=3t', lhs, '<=', RATIO * Q ** (6 * t), True
    if k == 3 * t:
        lhs = RATIO - 5 / (4 * Q) - 4 * (Q + 1) / (9 * Q ** 3) - 1 / (2 * Q ** 2)
        return 'k=3t,t=1', lhs, '>', Fraction(0), True
    lhs = Q ** (2 * k - t) + Q ** (4 * t + s) / 2
    return '2t<k<3t', lhs, '<=', RATIO * Q ** (2 * k), True


def _row_half(q, t, k):
    s = gcd(k, t)
    Q = Fraction(q)
    h = t // 2
    if 2 * k > 5 * t:
        lhs = Fraction(3, 2) * Q ** max(2 * k - h, 5 * t)
        return 'k>5t/2', lhs, '<=', RATIO * Q ** (2 * k)
    if 2 * k == 5 * t:
        lhs = ((Q ** (2 * k - t) - Q ** (3 * t)) * Q ** h
               + Q ** (3 * t) * (Q ** h + 1) ** 2 / 4
               + (Q ** s + 1) * Q ** (4 * t) / 4)
        degree = Q ** k + Q ** (2 * t) - (Q * Q + Q + 1)
        return 'k=5t/2', lhs, '<', RATIO * degree ** 2
    lhs = Q ** (2 * k - h) + Q ** (4 * t + s) / 2
    return '2t<k<5t/2', lhs, '<=', RATIO * Q ** (2 * k)


def theorem_row(case, q, t, k):
    if not 0 < 2 * t < k:
        raise InvalidInput(f"need 0 < 2t < k, got t={t}, k={k}")
    if case == '2t':
        regime, lhs, relation, rhs, extra = _row_2t(q, t, k)
    elif case == 't/2':
        if t % 2:
            raise InvalidInput("case t/2 needs t even")
        regime, lhs, relation, rhs = _row_half(q, t, k)
        extra = True
    else:
        raise InvalidInput(f"unknown case {case!r}")
    passes = _compare(lhs, relation, rhs) and extra
    return TableRow(case, q, t, k, gcd(k, t), regime, lhs, relation, rhs, passes)


def theorem_table(case, q_values=DEFAULT_Q, t_values=DEFAULT_T, k_max=DEFAULT_K_MAX):
    rows = []
    for q in q_values:
        if not galois.is_prime_power(q):
            raise InvalidInput(f"q={q} is not a prime power")
        for t in t_values:
            if case == 't/2' and t % 2:
                continue
            for k in range(2 * t + 1, k_max + 1):
                rows.append(theorem_row(case, q, t, k))
    logger.info("theorem table case=%s: %d rows", case, len(rows))
    return rows


def failing_pairs(rows):
    """Sorted (t, q) pairs failing for at least one k."""
    return sorted({(row.t, row.q) for row in rows if not row.passes})


def exclusion_set(q_values=DEFAULT_Q, t_values=DEFAULT_T, k_max=DEFAULT_K_MAX):
    both = theorem_table('2t', q_values, t_values, k_max) + theorem_table('t/2', q_values, t_values, k_max)
    return failing_pairs(both)
