"""Long Weierstrass curves over Q and the chord-tangent group law.

    y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6

Everything is exact (``fractions.Fraction``).  This module is the ground truth
that the division-polynomial machinery is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import ParameterError

Q = Fraction


def to_q(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot use {value!r} as an exact rational")


@dataclass(frozen=True)
class Point:
    """An affine point, or the point at infinity when both coordinates are None."""

    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    @classmethod
    def affine(cls, x, y) -> "Point":
        return cls(to_q(x), to_q(y))

    def __repr__(self) -> str:
        if self.is_infinity:
            return "Point(O)"
        return f"Point({self.x}, {self.y})"


INFINITY = Point()


@dataclass(frozen=True)
class Curve:
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, to_q(getattr(self, name)))
        if self.discriminant == 0:
            raise ParameterError(f"singular curve {self.coefficients}")

    @classmethod
    def from_coefficients(cls, coeffs: Iterable) -> "Curve":
        coeffs = [to_q(c) for c in coeffs]
        if len(coeffs) == 2:  # short form y^2 = x^3 + a x + b
            coeffs = [Q(0), Q(0), Q(0), coeffs[0], coeffs[1]]
        if len(coeffs) != 5:
            raise ParameterError("need (a1, a2, a3, a4, a6) or (a, b)")
        return cls(*coeffs)

    @classmethod
    def short(cls, a, b) -> "Curve":
        return cls(0, 0, 0, a, b)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def is_short(self) -> bool:
        return self.a1 == 0 and self.a2 == 0 and self.a3 == 0

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    @property
    def b_invariants(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return b_invariants(self)

    @property
    def discriminant(self) -> Fraction:
        b2, b4, b6, b8 = b_invariants(self)
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def __repr__(self) -> str:
        return "Curve[" + ",".join(str(c) for c in self.coefficients) + "]"


def b_invariants(curve: Curve) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    a1, a2, a3, a4, a6 = curve.coefficients
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def is_on_curve(curve: Curve, p: Point) -> bool:
    if p.is_infinity:
        return True
    a1, a2, a3, a4, a6 = curve.coefficients
    x, y = p.x, p.y
    return y * y + a1 * x * y + a3 * y == x ** 3 + a2 * x * x + a4 * x + a6


def _check(curve: Curve, p: Point) -> None:
    if not is_on_curve(curve, p):
        raise ParameterError(f"{p!r} is not on {curve!r}")


def negate(curve: Curve, p: Point) -> Point:
    if p.is_infinity:
        return p
    return Point(p.x, -p.y - curve.a1 * p.x - curve.a3)


def _add(curve: Curve, p: Point, q: Point) -> Point:
    if p.is_infinity:
        return q
    if q.is_infinity:
        return p
    a1, a2, a3, a4, a6 = curve.coefficients
    if p.x == q.x:
        if p.y + q.y + a1 * q.x + a3 == 0:
            return INFINITY
        lam = (3 * p.x * p.x + 2 * a2 * p.x + a4 - a1 * p.y) / (2 * p.y + a1 * p.x + a3)
    else:
        lam = (q.y - p.y) / (q.x - p.x)
    nu = p.y - lam * p.x
    x3 = lam * lam + a1 * lam - a2 - p.x - q.x
    y3 = -(lam + a1) * x3 - nu - a3
    return Point(x3, y3)


def add(curve: Curve, p: Point, q: Point) -> Point:
    """Group sum p + q."""
    _check(curve, p)
    _check(curve, q)
    return _add(curve, p, q)


def scalar_mul(curve: Curve, n: int, p: Point) -> Point:
    """[n]p by double-and-add; negative n multiplies -p."""
    _check(curve, p)
    if n < 0:
        return scalar_mul(curve, -n, negate(curve, p))
    result, base = INFINITY, p
    while n:
        if n & 1:
            result = _add(curve, result, base)
        n >>= 1
        if n:
            base = _add(curve, base, base)
    return result


def multiples(curve: Curve, p: Point, n_max: int) -> list[Point]:
    """[0]p, [1]p, ..., [n_max]p by repeated addition."""
    _check(curve, p)
    out = [INFINITY]
    for _ in range(n_max):
        out.append(_add(curve, out[-1], p))
    return out


def point_order(curve: Curve, p: Point, bound: int = 16) -> Optional[int]:
    """Smallest N <= bound with [N]p = O, or None if the order exceeds the bound."""
    _check(curve, p)
    q = p
    for n in range(1, bound + 1):
        if q.is_infinity:
            return n
        q = _add(curve, q, p)
    return None
