"""Division polynomials and the normalized sequences F_n, G_n, H_n.

Two routes are provided:

* ``psi_poly`` / ``phi_omega_poly`` build psi_n, phi_n, omega_n symbolically as
  canonical elements of Q[x, y]/(E), i.e. ``c0(x) + c1(x)*y``.
* ``eval_sequences`` evaluates those same canonical polynomials at a point.  It
  uses the x-only factorisation psi_n = f_n (n odd), psi_n = psi_2*f_n (n even)
  so no division by psi_2(P) ever happens and 2-torsion points are fine.

``recursive_sequences`` runs the textbook numeric recursions on F, G, H
directly and is kept as an independent cross-check.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import polyx
from .curve import INFINITY, Curve, Point, b_invariants, is_on_curve
from .errors import ConsistencyError, ParameterError


def normalize(v):
    """Return ints for integral rationals so big-integer work skips gcds."""
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


class CurvePoly:
    """Element ``c0(x) + c1(x)*y`` of Q[x, y] reduced modulo the curve equation.

    Coefficient maps are stored sparsely (degree -> coefficient, no zeros).
    """

    __slots__ = ("curve", "c0", "c1")

    def __init__(self, curve: Curve, c0=(), c1=()):
        self.curve = curve
        if isinstance(c0, dict):
            c0 = _dense(c0)
        if isinstance(c1, dict):
            c1 = _dense(c1)
        self.c0 = polyx.trim(c0)
        self.c1 = polyx.trim(c1)

    # construction helpers
    @classmethod
    def const(cls, curve: Curve, c) -> "CurvePoly":
        return cls(curve, (Fraction(c),))

    @classmethod
    def x(cls, curve: Curve) -> "CurvePoly":
        return cls(curve, (Fraction(0), Fraction(1)))

    @classmethod
    def y(cls, curve: Curve) -> "CurvePoly":
        return cls(curve, (), (Fraction(1),))

    @property
    def y0(self) -> dict:
        return {i: c for i, c in enumerate(self.c0) if c}

    @property
    def y1(self) -> dict:
        return {i: c for i, c in enumerate(self.c1) if c}

    def is_zero(self) -> bool:
        return not self.c0 and not self.c1

    def __add__(self, other: "CurvePoly") -> "CurvePoly":
        return CurvePoly(self.curve, polyx.add(self.c0, other.c0), polyx.add(self.c1, other.c1))

    def __sub__(self, other: "CurvePoly") -> "CurvePoly":
        return CurvePoly(self.curve, polyx.sub(self.c0, other.c0), polyx.sub(self.c1, other.c1))

    def __neg__(self) -> "CurvePoly":
        return CurvePoly(self.curve, polyx.scale(self.c0, -1), polyx.scale(self.c1, -1))

    def __mul__(self, other) -> "CurvePoly":
        if not isinstance(other, CurvePoly):
            return CurvePoly(self.curve, polyx.scale(self.c0, other), polyx.scale(self.c1, other))
        a0, a1 = self.c0, self.c1
        b0, b1 = other.c0, other.c1
        lo = polyx.mul(a0, b0)
        hi = polyx.add(polyx.mul(a0, b1), polyx.mul(a1, b0))
        yy = polyx.mul(a1, b1)
        if yy:
            # y^2 = f(x) - (a1*x + a3)*y
            f, g = _curve_rhs(self.curve), _linear_y(self.curve)
            lo = polyx.add(lo, polyx.mul(yy, f))
            hi = polyx.sub(hi, polyx.mul(yy, g))
        return CurvePoly(self.curve, lo, hi)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "CurvePoly":
        out = CurvePoly.const(self.curve, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, CurvePoly):
            return NotImplemented
        return self.c0 == other.c0 and self.c1 == other.c1

    def __hash__(self):
        return hash((self.c0, self.c1))

    def div_psi2(self) -> "CurvePoly":
        """Exact quotient by psi_2 = 2y + a1*x + a3, using psi_2^2 = 4x^3 + b2x^2 + 2b4x + b6."""
        num = self * psi2_poly(self.curve)
        den = _psi2_squared(self.curve)
        return CurvePoly(self.curve, polyx.exact_div(num.c0, den), polyx.exact_div(num.c1, den))

    def evaluate(self, p: Point):
        if p.is_infinity:
            raise ParameterError("cannot evaluate at the point at infinity")
        return normalize(polyx.evaluate(self.c0, p.x) + p.y * polyx.evaluate(self.c1, p.x))

    def __repr__(self) -> str:
        return f"CurvePoly(y^0={self.y0}, y^1={self.y1})"


def _dense(coeffs: dict) -> tuple:
    if not coeffs:
        return ()
    out = [Fraction(0)] * (max(coeffs) + 1)
    for k, v in coeffs.items():
        out[k] = Fraction(v)
    return tuple(out)


def _curve_rhs(c: Curve) -> tuple:
    return (c.a6, c.a4, c.a2, Fraction(1))


def _linear_y(c: Curve) -> tuple:
    return polyx.trim((c.a3, c.a1))


def _psi2_squared(c: Curve) -> tuple:
    b2, b4, b6, _ = b_invariants(c)
    return (b6, 2 * b4, b2, Fraction(4))


def psi2_poly(c: Curve) -> CurvePoly:
    return CurvePoly(c, (c.a3, c.a1), (Fraction(2),))


def _psi3_x(c: Curve) -> tuple:
    b2, b4, b6, b8 = b_invariants(c)
    return (b8, 3 * b6, 3 * b4, b2, Fraction(3))


def _psi4_cofactor_x(c: Curve) -> tuple:
    b2, b4, b6, b8 = b_invariants(c)
    return (b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4, b2, Fraction(2))


# --- symbolic route -----------------------------------------------------------

def _memo_limit() -> Optional[int]:
    raw = os.environ.get("EDSKIT_MEMO_LIMIT", "").strip()
    return int(raw) if raw else None


_memo: dict[Curve, dict[int, CurvePoly]] = {}
_memo_lock = threading.Lock()


def _memo_size() -> int:
    return sum(len(v) for v in _memo.values())


def clear_memo() -> None:
    with _memo_lock:
        _memo.clear()


def psi_poly(curve: Curve, n: int) -> CurvePoly:
    """psi_n as a canonical curve polynomial (memoized per curve)."""
    if n < 0:
        raise ParameterError("psi_n needs n >= 0")
    with _memo_lock:
        cached = _memo.get(curve, {}).get(n)
    if cached is not None:
        return cached
    value = _psi_compute(curve, n)
    with _memo_lock:
        limit = _memo_limit()
        if limit is None or _memo_size() < limit:
            _memo.setdefault(curve, {})[n] = value
    return value


def _psi_compute(c: Curve, n: int) -> CurvePoly:
    if n == 0:
        return CurvePoly(c)
    if n == 1:
        return CurvePoly.const(c, 1)
    if n == 2:
        return psi2_poly(c)
    if n == 3:
        return CurvePoly(c, _psi3_x(c))
    if n == 4:
        return psi2_poly(c) * CurvePoly(c, _psi4_cofactor_x(c))
    m = n // 2
    if n % 2:
        return psi_poly(c, m + 2) * psi_poly(c, m) ** 3 - psi_poly(c, m - 1) * psi_poly(c, m + 1) ** 3
    num = psi_poly(c, m) * (
        psi_poly(c, m - 1) ** 2 * psi_poly(c, m + 2) - psi_poly(c, m - 2) * psi_poly(c, m + 1) ** 2
    )
    return num.div_psi2()


def phi_omega_poly(curve: Curve, n: int) -> tuple[CurvePoly, CurvePoly]:
    """(phi_n, omega_n) as canonical curve polynomials."""
    if n < 0:
        raise ParameterError("phi_n, omega_n need n >= 0")
    c = curve
    if n == 0:
        return CurvePoly.const(c, 1), CurvePoly.const(c, 1)
    if n == 1:
        return CurvePoly.x(c), CurvePoly.y(c)
    psi = {k: psi_poly(c, k) for k in range(max(n - 2, 0), n + 3)}
    phi = CurvePoly.x(c) * psi[n] ** 2 - psi[n + 1] * psi[n - 1]
    num = (
        psi[n - 1] ** 2 * psi[n + 2]
        - psi[n - 2] * psi[n + 1] ** 2
        - psi2_poly(c) * psi[n] * (phi * c.a1 + psi[n] ** 2 * c.a3)
    )
    omega = num.div_psi2() * Fraction(1, 2)
    return phi, omega


# --- evaluation at a point ------------------------------------------------------

def _ring(curve: Curve, p: Point):
    """Curve data and coordinates as ints when everything is integral."""
    vals = list(curve.coefficients) + list(b_invariants(curve)) + [p.x, p.y]
    if all(v.denominator == 1 for v in vals):
        return [v.numerator for v in vals]
    return vals


def psi_values(curve: Curve, p: Point, n_max: int) -> list:
    """[psi_0(P), ..., psi_{n_max}(P)] via the division-free x-only recursion."""
    if p.is_infinity:
        raise ParameterError("division polynomials are not evaluated at O")
    a1, a2, a3, a4, a6, b2, b4, b6, b8, x, y = _ring(curve, p)
    top = max(n_max, 4)
    f = [0] * (top + 1)
    f[1] = 1
    f[2] = 1
    f[3] = 3 * x ** 4 + b2 * x ** 3 + 3 * b4 * x ** 2 + 3 * b6 * x + b8
    f[4] = polyx.evaluate((b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4, b2, 2), x)
    big = (4 * x ** 3 + b2 * x ** 2 + 2 * b4 * x + b6) ** 2  # psi_2^4
    for k in range(5, top + 1):
        m = k // 2
        if k % 2:
            if m % 2 == 0:
                f[k] = big * f[m + 2] * f[m] ** 3 - f[m - 1] * f[m + 1] ** 3
            else:
                f[k] = f[m + 2] * f[m] ** 3 - big * f[m - 1] * f[m + 1] ** 3
        else:
            f[k] = f[m] * (f[m + 2] * f[m - 1] ** 2 - f[m - 2] * f[m + 1] ** 2)
    psi2 = 2 * y + a1 * x + a3
    return [normalize(f[k] * psi2 if k % 2 == 0 else f[k]) for k in range(n_max + 1)]


@dataclass
class SequenceTriple:
    """F, G, H at a point for n = 0..n_max.  H entries are None where undefined."""

    curve: Curve
    point: Point
    gamma: Fraction
    n_max: int
    F: list = field(repr=False)
    G: list = field(repr=False)
    H: list = field(repr=False)

    @property
    def h_defined(self) -> bool:
        return all(h is not None for h in self.H)

    def is_integral(self) -> bool:
        return all(
            isinstance(v, int) or (isinstance(v, Fraction) and v.denominator == 1)
            for v in self.F + self.G + [h for h in self.H if h is not None]
        )


def _gamma_pow(gamma: Fraction, e: int):
    return 1 if gamma == 1 else gamma ** e


def eval_sequences(curve: Curve, p: Point, gamma=1, n_max: int = 10) -> SequenceTriple:
    """F_n = g^(1-n^2) psi_n(P), G_n = g^(-2n^2) phi_n(P), H_n = g^(-3n^2) omega_n(P)."""
    gamma = Fraction(gamma)
    if gamma == 0:
        raise ParameterError("gamma must be nonzero")
    if n_max < 1:
        raise ParameterError("n_max must be >= 1")
    if p.is_infinity:
        raise ParameterError("the point at infinity has no sequences")
    if not is_on_curve(curve, p):
        raise ParameterError(f"{p!r} is not on {curve!r}")
    psi = psi_values(curve, p, n_max + 2)
    x, y = normalize(p.x), normalize(p.y)
    a1, a3 = normalize(curve.a1), normalize(curve.a3)
    phi = [1, x]
    omega = [1, y]
    psi2 = psi[2]
    for n in range(2, n_max + 1):
        phi_n = x * psi[n] ** 2 - psi[n + 1] * psi[n - 1]
        phi.append(normalize(phi_n))
        if psi2 == 0:
            omega.append(None)
            continue
        num = psi[n - 1] ** 2 * psi[n + 2] - psi[n - 2] * psi[n + 1] ** 2 - psi2 * psi[n] * (a1 * phi_n + a3 * psi[n] ** 2)
        omega.append(_exact_quotient(num, 2 * psi2))
    F = [normalize(_gamma_pow(gamma, 1 - n * n) * psi[n]) for n in range(n_max + 1)]
    G = [normalize(_gamma_pow(gamma, -2 * n * n) * phi[n]) for n in range(n_max + 1)]
    H = [None if omega[n] is None else normalize(_gamma_pow(gamma, -3 * n * n) * omega[n]) for n in range(n_max + 1)]
    return SequenceTriple(curve, p, gamma, n_max, F, G, H)


def _exact_quotient(num, den):
    if isinstance(num, int) and isinstance(den, int):
        q, r = divmod(num, den)
        if r:
            # omega_n is a polynomial with possibly half-integral coefficients
            return Fraction(num, den)
        return q
    return normalize(Fraction(num) / den)


def recursive_sequences(curve: Curve, p: Point, gamma=1, n_max: int = 10) -> SequenceTriple:
    """F, G, H straight from the normalized recursions (needs F_2 != 0).

    F_{2m+1} = F_{m+2} F_m^3 - F_{m-1} F_{m+1}^3
    F_{2m} F_2 = F_m (F_{m+2} F_{m-1}^2 - F_{m-2} F_{m+1}^2)
    G_n = x g^-2 F_n^2 - F_{n+1} F_{n-1}
    H_n = (F_{n-1}^2 F_{n+2} - F_{n-2} F_{n+1}^2 - g^-1 F_2 F_n (a1 G_n + g^-2 a3 F_n^2)) / (2 F_2)
    """
    gamma = Fraction(gamma)
    x, y = p.x, p.y
    a1, a2, a3, a4, a6 = curve.coefficients
    b2, b4, b6, b8 = b_invariants(curve)
    top = max(n_max + 2, 4)
    F = [Fraction(0)] * (top + 1)
    F[1] = Fraction(1)
    F[2] = gamma ** -3 * (2 * y + a1 * x + a3)
    F[3] = gamma ** -8 * (3 * x ** 4 + b2 * x ** 3 + 3 * b4 * x ** 2 + 3 * b6 * x + b8)
    F[4] = gamma ** -15 * (2 * y + a1 * x + a3) * polyx.evaluate(_psi4_cofactor_x(curve), x)
    if F[2] == 0:
        raise ParameterError("numeric recursion needs F_2 != 0")
    for k in range(5, top + 1):
        m = k // 2
        if k % 2:
            F[k] = F[m + 2] * F[m] ** 3 - F[m - 1] * F[m + 1] ** 3
        else:
            F[k] = F[m] * (F[m + 2] * F[m - 1] ** 2 - F[m - 2] * F[m + 1] ** 2) / F[2]
    G = [Fraction(1), x / gamma ** 2]
    H = [Fraction(1), y / gamma ** 3]
    for n in range(2, n_max + 1):
        G.append(x / gamma ** 2 * F[n] ** 2 - F[n + 1] * F[n - 1])
        H.append(
            (F[n - 1] ** 2 * F[n + 2] - F[n - 2] * F[n + 1] ** 2
             - F[2] * F[n] * (a1 * G[n] + a3 * F[n] ** 2 / gamma ** 2) / gamma)
            / (2 * F[2])
        )
    norm = lambda seq: [normalize(v) for v in seq[: n_max + 1]]
    return SequenceTriple(curve, p, gamma, n_max, norm(F), norm(G), norm(H))


def multiple_from_sequences(seq: SequenceTriple, n: int) -> Point:
    """[n]P = (g^2 G_n / F_n^2, g^3 H_n / F_n^3), or O when F_n = 0."""
    if not 1 <= n <= seq.n_max:
        raise ParameterError(f"n={n} outside 1..{seq.n_max}")
    f = seq.F[n]
    if f == 0:
        return INFINITY
    if seq.H[n] is None:
        raise ParameterError("H_n is undefined for this point (F_2 = 0)")
    g = seq.gamma
    return Point(Fraction(g ** 2 * seq.G[n]) / f ** 2, Fraction(g ** 3 * seq.H[n]) / f ** 3)


# --- elliptic divisibility sequences -----------------------------------------------

@dataclass
class EdsReport:
    recurrence_ok: bool
    divisibility_ok: Optional[bool]
    discriminant: Fraction
    proper: bool
    nonsingular: bool
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.recurrence_ok and self.divisibility_ok is not False


def eds_discriminant(h2, h3, h4):
    return (
        h4 * h2 ** 15 - h3 ** 3 * h2 ** 12 + 3 * h4 ** 2 * h2 ** 10 - 20 * h4 * h3 ** 3 * h2 ** 7
        + 3 * h4 ** 3 * h2 ** 5 + 16 * h3 ** 6 * h2 ** 4 + 8 * h4 ** 2 * h3 ** 3 * h2 ** 2 + h4 ** 4
    )


def check_eds(h: Sequence) -> EdsReport:
    """Check the EDS recurrence (all m >= n >= 1, m+n <= n_max) and divisibility.

    Divisibility is only meaningful for integer sequences; it is reported as
    None otherwise.  ``violations`` lists (m, n) witnesses, recurrence first.
    """
    h = [normalize(Fraction(v)) for v in h]
    n_max = len(h) - 1
    if n_max < 4:
        raise ParameterError("check_eds needs h_0..h_4 at least")
    violations = []
    for n in range(1, n_max + 1):
        for m in range(n, n_max - n + 1):
            lhs = h[m + n] * h[m - n]
            rhs = h[m + 1] * h[m - 1] * h[n] ** 2 - h[n + 1] * h[n - 1] * h[m] ** 2
            if lhs != rhs:
                violations.append((m, n))
    recurrence_ok = not violations
    divisibility_ok = None
    if all(isinstance(v, int) for v in h):
        divisibility_ok = True
        for n in range(1, n_max + 1):
            for m in range(2 * n, n_max + 1, n):
                hn, hm = h[n], h[m]
                if (hn == 0 and hm != 0) or (hn != 0 and hm % hn):
                    divisibility_ok = False
                    violations.append((m, n))
    disc = normalize(Fraction(eds_discriminant(h[2], h[3], h[4])))
    proper = h[0] == 0 and h[1] == 1 and h[2] * h[3] != 0
    return EdsReport(recurrence_ok, divisibility_ok, disc, proper, proper and disc != 0, violations)
