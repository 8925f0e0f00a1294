"""
Text and JSON forms of linearized polynomials.

Literal: ``"1*x^q^0; g^7*x^q^2"`` (coefficient optional, defaults to 1).
JSON: a list of ``[i, coeff_index]`` pairs for the nonzero terms.
"""

import re

from gf.exceptions import ElementParseError

from .polynomials import LinPoly

TERM_RE = re.compile(r'^\s*(?:(?P<coeff>g\s*\^\s*-?\d+|\d+)\s*\*\s*)?x\s*\^\s*q\s*\^\s*(?P<index>\d+)\s*$')


def lp_from_literal(ctx, text):
    text = str(text).strip()
    if text == '0':
        return LinPoly.zero(ctx)
    terms = {}
    for chunk in text.split(';'):
        if not chunk.strip():
            continue
        match = TERM_RE.match(chunk)
        if not match:
            raise ElementParseError(f"bad linearized term {chunk.strip()!r}")
        coeff = ctx.parse_element(match.group('coeff')) if match.group('coeff') else ctx.one()
        index = int(match.group('index'))
        terms[index] = terms.get(index, ctx.zero()) + coeff
    if not terms:
        raise ElementParseError(f"empty linearized polynomial literal {text!r}")
    return LinPoly.from_terms(ctx, terms)


def lp_to_literal(L):
    terms = L.terms()
    if not terms:
        return '0'
    return '; '.join(f"{int(c)}*x^q^{i}" for i, c in terms)


def lp_to_pairs(L):
    return [[int(i), int(c)] for i, c in L.terms()]


def lp_from_pairs(ctx, pairs):
    terms = {}
    for pair in pairs:
        try:
            i, c = pair
        except (TypeError, ValueError):
            raise ElementParseError(f"expected [index, coeff] pair, got {pair!r}")
        terms[int(i)] = terms.get(int(i), ctx.zero()) + ctx.parse_element(c)
    return LinPoly.from_terms(ctx, terms)


def lp_from_spec(ctx, spec):
    """Accept either a literal string or a list of JSON pairs."""
    if isinstance(spec, str):
        return lp_from_literal(ctx, spec)
    return lp_from_pairs(ctx, spec)
