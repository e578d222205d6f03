"""Dense univariate polynomials over Q as tuples of coefficients (index = degree).

Only what the curve-polynomial ring needs.  Zero is the empty tuple.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest

from .errors import ConsistencyError

XPoly = tuple


def trim(coeffs) -> XPoly:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def add(p: XPoly, q: XPoly) -> XPoly:
    return trim(a + b for a, b in zip_longest(p, q, fillvalue=0))


def sub(p: XPoly, q: XPoly) -> XPoly:
    return trim(a - b for a, b in zip_longest(p, q, fillvalue=0))


def scale(p: XPoly, c) -> XPoly:
    if c == 0:
        return ()
    return tuple(a * c for a in p)


def shift(p: XPoly, k: int = 1) -> XPoly:
    """Multiply by x**k."""
    return (0,) * k + p if p else ()


def mul(p: XPoly, q: XPoly) -> XPoly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def divmod_(p: XPoly, q: XPoly) -> tuple[XPoly, XPoly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(a) for a in p]
    lead = Fraction(q[-1])
    dq = len(q) - 1
    quot = [Fraction(0)] * max(len(p) - dq, 0)
    for k in range(len(p) - dq - 1, -1, -1):
        c = rem[k + dq] / lead
        quot[k] = c
        if c:
            for j, b in enumerate(q):
                rem[k + j] -= c * b
    return trim(quot), trim(rem)


def exact_div(p: XPoly, q: XPoly) -> XPoly:
    quot, rem = divmod_(p, q)
    if rem:
        raise ConsistencyError("inexact polynomial division")
    return quot


def evaluate(p: XPoly, x):
    acc = 0
    for a in reversed(p):
        acc = acc * x + a
    return acc
