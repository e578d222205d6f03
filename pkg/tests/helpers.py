"""Seeded generators of curves with rational points, shared by the test modules."""

import math
import random
from fractions import Fraction

from edskit.arith import is_perfect_square
from edskit.curve import Curve, Point
from edskit.errors import ParameterError


def rational_sqrt(v: Fraction):
    if v < 0:
        return None
    n, d = v.numerator, v.denominator
    if is_perfect_square(n) and is_perfect_square(d):
        return Fraction(math.isqrt(n), math.isqrt(d))
    return None


def points_of_height(curve: Curve, height: int = 50):
    """Affine points whose x = p/q^2 has max(|p|, q^2) <= height."""
    a1, a2, a3, a4, a6 = curve.coefficients
    out = []
    q = 1
    while q * q <= height:
        for p in range(-height, height + 1):
            if math.gcd(p, q) != 1:
                continue
            x = Fraction(p, q * q)
            lin = a1 * x + a3
            disc = lin * lin + 4 * (x ** 3 + a2 * x ** 2 + a4 * x + a6)
            r = rational_sqrt(disc)
            if r is None:
                continue
            for y in {(-lin + r) / 2, (-lin - r) / 2}:
                out.append(Point(x, y))
        q += 1
    return sorted(out, key=lambda pt: (pt.x, pt.y))


def psi2_at(curve: Curve, p: Point):
    return 2 * p.y + curve.a1 * p.x + curve.a3


def psi3_at(curve: Curve, p: Point):
    b2, b4, b6, b8 = curve.b_invariants
    x = p.x
    return 3 * x ** 4 + b2 * x ** 3 + 3 * b4 * x ** 2 + 3 * b6 * x + b8


def random_curve_points(count: int, seed: int, short: bool = False, bound: int = 5,
                        height: int = 50, avoid_3_torsion: bool = False):
    """``count`` (curve, point) pairs with small integral coefficients.

    Points with psi_2(P) = 0 are skipped (H is undefined there); with
    ``avoid_3_torsion`` points with psi_3(P) = 0 are skipped as well.
    """
    rng = random.Random(seed)
    out = []
    seen = set()
    while len(out) < count:
        if short:
            coeffs = (0, 0, 0, rng.randint(-bound, bound), rng.randint(-bound, bound))
        else:
            coeffs = tuple(rng.randint(-bound, bound) for _ in range(5))
        if coeffs in seen:
            continue
        seen.add(coeffs)
        try:
            curve = Curve(*coeffs)
        except ParameterError:
            continue
        pts = [p for p in points_of_height(curve, height) if psi2_at(curve, p) != 0]
        if avoid_3_torsion:
            pts = [p for p in pts if psi3_at(curve, p) != 0]
        if pts:
            out.append((curve, rng.choice(pts)))
    return out
