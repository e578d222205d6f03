"""Curves carrying a rational point (0, 0) of prescribed order N.

N = 4..7, 9 use the Tate normal form y^2 + (1-c)xy - by = x^3 - bx^2.
N = 8, 10, 12 use integral models birational to it (so integer alpha gives
integer coefficients).  N = 2, 3 use Kubert's two-coefficient families.
Every constructor checks that (0, 0) really has order N.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .arith import as_int
from .curve import Curve, Point, point_order
from .errors import ConsistencyError, ParameterError

TATE_ORDERS = (4, 5, 6, 7, 8, 9, 10, 12)
ALL_ORDERS = (2, 3) + TATE_ORDERS

# alpha values excluded for integer alpha (alpha = 1/2 never occurs over Z)
EXCLUDED_ALPHA = {
    4: frozenset({0}),
    5: frozenset({0}),
    6: frozenset({-1, 0}),
    7: frozenset({0, 1}),
    8: frozenset({0, 1}),
    9: frozenset({0, 1}),
    10: frozenset({0, 1}),
    12: frozenset({0, 1}),
}

ORIGIN = Point.affine(0, 0)


@dataclass(frozen=True)
class TateCurve:
    N: int
    params: tuple  # (alpha,) or the two Kubert coefficients
    curve: Curve
    derived: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def point(self) -> Point:
        return ORIGIN

    @property
    def alpha(self) -> Optional[int]:
        return self.params[0] if self.N >= 4 else None

    @property
    def h_available(self) -> bool:
        # F_2 = psi_2(0,0) = 0 on the order-2 family, so H is not defined there
        return self.N != 2

    def label(self) -> str:
        return f"E{self.N}(" + ",".join(str(p) for p in self.params) + ")"


def beta(alpha: int) -> int:
    return (2 * alpha - 1) * (alpha - 1)


def zeta(alpha: int) -> int:
    return -alpha * alpha + 3 * alpha - 1


def lam(alpha: int) -> int:
    return (3 * alpha * alpha - 3 * alpha + 1) * (alpha - 2 * alpha * alpha)


def theta(alpha: int) -> int:
    return 2 * alpha - 2 * alpha * alpha - 1


def eta(alpha: int) -> int:
    return alpha * alpha - alpha + 1


def _normal_form(b: int, c: int) -> tuple:
    # y^2 + (1-c)xy - by = x^3 - bx^2
    return (1 - c, -b, -b, 0, 0)


def _coefficients(N: int, a: int) -> tuple[tuple, dict]:
    if N == 4:
        return _normal_form(a, 0), {"b": a, "c": 0}
    if N == 5:
        return _normal_form(a, a), {"b": a, "c": a}
    if N == 6:
        b, c = a + a * a, a
        return _normal_form(b, c), {"b": b, "c": c}
    if N == 7:
        b, c = a ** 3 - a ** 2, a ** 2 - a
        return _normal_form(b, c), {"b": b, "c": c}
    if N == 9:
        c = a * a * (a - 1)
        b = c * (a * (a - 1) + 1)
        return _normal_form(b, c), {"b": b, "c": c, "eta": eta(a)}
    bt = beta(a)
    if N == 8:
        # y^2 + (a - B)xy - a^3 B y = x^3 - a^2 B x^2
        return (a - bt, -a * a * bt, -a ** 3 * bt, 0, 0), {"beta": bt}
    if N == 10:
        z = zeta(a)
        # y^2 + (z^2 - a B z)xy - a^3 B z^4 y = x^3 - a^3 B z^2 x^2
        return (z * z - a * bt * z, -a ** 3 * bt * z * z, -a ** 3 * bt * z ** 4, 0, 0), {"beta": bt, "zeta": z}
    if N == 12:
        l, t = lam(a), theta(a)
        u = a - 1
        # y^2 + u(u^3 - L)xy - u^8 L T y = x^3 - u^4 L T x^2
        return (u * (u ** 3 - l), -u ** 4 * l * t, -u ** 8 * l * t, 0, 0), {"lambda": l, "theta": t}
    raise ParameterError(f"no Tate normal form for N={N}")


def _validated(N: int, params: tuple, coeffs: tuple, derived: dict) -> TateCurve:
    curve = Curve(*coeffs)  # raises ParameterError if singular
    order = point_order(curve, ORIGIN, bound=16)
    if order != N:
        raise ConsistencyError(f"(0,0) has order {order} on {curve!r}, expected {N}")
    return TateCurve(N, params, curve, derived)


def tate_curve(N: int, alpha) -> TateCurve:
    """Tate normal form (or its integral model for N = 8, 10, 12) for integer alpha."""
    if N not in TATE_ORDERS:
        raise ParameterError(f"N must be one of {TATE_ORDERS}, got {N}")
    if isinstance(alpha, Fraction) and alpha.denominator != 1:
        raise ParameterError("alpha must be an integer")
    try:
        a = as_int(alpha)
    except (TypeError, ValueError) as exc:
        raise ParameterError(str(exc)) from None
    if a in EXCLUDED_ALPHA[N]:
        raise ParameterError(f"alpha={a} is excluded for N={N}")
    coeffs, derived = _coefficients(N, a)
    return _validated(N, (a,), coeffs, derived)


def kubert_curve(N: int, p: int, q: int) -> TateCurve:
    """N=2: y^2 = x^3 + p x^2 + q x (q != 0).  N=3: y^2 + p xy + q y = x^3 (q != 0)."""
    p, q = as_int(p), as_int(q)
    if N == 2:
        if q == 0:
            raise ParameterError("a4 must be nonzero for the order-2 family")
        coeffs = (0, p, 0, q, 0)
    elif N == 3:
        if q == 0:
            raise ParameterError("a3 must be nonzero for the order-3 family")
        coeffs = (p, 0, q, 0, 0)
    else:
        raise ParameterError(f"Kubert families exist for N in (2, 3), got {N}")
    return _validated(N, (p, q), coeffs, {})


def family_member(N: int, *params) -> TateCurve:
    if N in (2, 3):
        return kubert_curve(N, *params)
    (alpha,) = params
    return tate_curve(N, alpha)


def admissible_alphas(N: int, lo: int, hi: int) -> list[int]:
    """Integers in [lo, hi] giving a nonsingular member of the order-N family."""
    out = []
    for a in range(lo, hi + 1):
        if a in EXCLUDED_ALPHA[N]:
            continue
        try:
            coeffs, _ = _coefficients(N, a)
            Curve(*coeffs)
        except ParameterError:
            continue
        out.append(a)
    return out


def admissible_pairs(N: int, lo: int, hi: int) -> list[tuple[int, int]]:
    """Kubert coefficient pairs (p, q) with q != 0 giving nonsingular curves."""
    out = []
    for p in range(lo, hi + 1):
        for q in range(lo, hi + 1):
            if q == 0:
                continue
            coeffs = (0, p, 0, q, 0) if N == 2 else (p, 0, q, 0, 0)
            try:
                Curve(*coeffs)
            except ParameterError:
                continue
            out.append((p, q))
    return out
