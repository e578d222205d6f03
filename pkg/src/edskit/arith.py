"""Exact integer helpers: roots, perfect-power tests and a Pell solver.

Sequence terms are signed, so a "square term" is one whose absolute value is
the square of a nonzero integer.  Cubes keep their sign.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

from .errors import ParameterError, PellModulusError


class PellSolution(NamedTuple):
    x: int
    y: int


def as_int(value) -> int:
    """Coerce an integral ``int``/``Fraction`` to ``int``; reject anything else."""
    if isinstance(value, bool):
        raise TypeError("booleans are not integers here")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    raise ValueError(f"expected an integer, got {value!r}")


def isqrt(n: int) -> int:
    """Return floor(sqrt(n)) for n >= 0."""
    if n < 0:
        raise ParameterError("isqrt of a negative number")
    return math.isqrt(n)


def icbrt(n: int) -> int:
    """Return the integer c with c**3 <= n < (c+1)**3 (floor cube root, any sign)."""
    n = as_int(n)
    if n < 0:
        c = -_icbrt_nonneg(-n)
        # floor semantics for negatives
        return c if c ** 3 == n else c - 1
    return _icbrt_nonneg(n)


def _icbrt_nonneg(n: int) -> int:
    if n < 2:
        return n
    b = n.bit_length()
    if b <= 48:
        c = int(round(n ** (1.0 / 3.0)))
    else:
        # root of the top bits gives an upper bound good to about half the digits
        s = b // 6
        c = (_icbrt_nonneg(n >> (3 * s)) + 1) << s
        while True:
            nxt = (2 * c + n // (c * c)) // 3
            if nxt >= c:
                break
            c = nxt
    while c ** 3 > n:
        c -= 1
    while (c + 1) ** 3 <= n:
        c += 1
    return c


# cubes modulo 7 * 9 * 13 * 19 * 37; rules out most non-cubes cheaply
_CUBE_MOD = 7 * 9 * 13 * 19 * 37
_CUBE_RESIDUES = frozenset(pow(k, 3, _CUBE_MOD) for k in range(_CUBE_MOD))


# squares modulo 64 * 63 * 65 * 11
_SQUARE_MOD = 64 * 63 * 65 * 11
_SQUARE_RESIDUES = frozenset(k * k % _SQUARE_MOD for k in range(_SQUARE_MOD))


def is_perfect_square(n: int) -> bool:
    if n < 0 or n % _SQUARE_MOD not in _SQUARE_RESIDUES:
        return False
    r = math.isqrt(n)
    return r * r == n


def is_square_term(n: int) -> bool:
    """True iff n != 0 and |n| is a square (the +/- beta^2 convention)."""
    n = as_int(n)
    return n != 0 and is_perfect_square(abs(n))


def is_cube_term(n: int) -> bool:
    """True iff n != 0 and n = c**3 for some integer c."""
    n = as_int(n)
    if n == 0 or n % _CUBE_MOD not in _CUBE_RESIDUES:
        return False
    c = icbrt(n)
    return c ** 3 == n


def _sqrt_continued_fraction_period(d: int) -> list[int]:
    a0 = math.isqrt(d)
    m, q, a = 0, 1, a0
    period = []
    while a != 2 * a0:
        m = a * q - m
        q = (d - m * m) // q
        a = (a0 + m) // q
        period.append(a)
    return period


def pell_fundamental(d: int) -> PellSolution:
    """Smallest positive solution of x^2 - d*y^2 = 1 via the continued fraction of sqrt(d)."""
    if d <= 0:
        raise PellModulusError(f"Pell modulus must be positive, got {d}")
    if is_perfect_square(d):
        raise PellModulusError(f"Pell modulus must not be a perfect square, got {d}")
    a0 = math.isqrt(d)
    period = _sqrt_continued_fraction_period(d)
    # convergent p_{k-1}/q_{k-1} at the end of the period (or twice it if odd)
    terms = period[:-1] if len(period) % 2 == 0 else period + period[:-1]
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    for a in terms:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    assert p * p - d * q * q == 1
    return PellSolution(p, q)


def pell_solutions(d: int, count: int) -> list[PellSolution]:
    """The ``count`` smallest positive solutions of x^2 - d*y^2 = 1, ascending in x."""
    if count < 1:
        raise ParameterError("count must be >= 1")
    x1, y1 = pell_fundamental(d)
    out = [PellSolution(x1, y1)]
    x, y = x1, y1
    while len(out) < count:
        x, y = x1 * x + d * y1 * y, x1 * y + y1 * x
        out.append(PellSolution(x, y))
    return out
