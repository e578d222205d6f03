"""Recover the lattice invariants and the curve from G_1, G_2, H_1, H_2.

Everything happens over Q: the Weierstrass function and its derivative at the
point are identified with x and -2y on a short model y^2 = x^3 + ax + b,
where a = -g2/4 and b = -g3/4.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .curve import Curve, Point, is_on_curve, scalar_mul
from .divpoly import eval_sequences
from .errors import ParameterError, TorsionObstruction


@dataclass(frozen=True)
class WardData:
    G1: Fraction
    G2: Fraction
    H1: Fraction
    H2: Fraction
    gamma: Fraction = Fraction(1)

    def __post_init__(self):
        for name in ("G1", "G2", "H1", "H2", "gamma"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.gamma == 0:
            raise ParameterError("gamma must be nonzero")

    @property
    def denominator(self) -> Fraction:
        """4 G1 H1^2 - G2, which equals F_3."""
        return 4 * self.G1 * self.H1 ** 2 - self.G2

    def rescaled(self, gamma) -> "WardData":
        """Same point, normalized by ``gamma`` instead of the current one."""
        r = Fraction(self.gamma) / Fraction(gamma)
        return WardData(self.G1 * r ** 2, self.G2 * r ** 8, self.H1 * r ** 3, self.H2 * r ** 12, gamma)


def ward_invariants(w: WardData) -> tuple[Fraction, Fraction]:
    den = w.denominator
    if den == 0 or w.H1 == 0:
        raise TorsionObstruction("the point has order 2 or 3 (F_2 F_3 = 0)")
    G1, G2, H1, H2, g = w.G1, w.G2, w.H1, w.H2, w.gamma
    g2 = 4 * g ** 4 * (12 * G1 ** 3 * H1 ** 2 - 3 * G1 ** 2 * G2 - 8 * H1 ** 4 - H2) / den
    g3 = 4 * g ** 6 * (4 * G1 * H1 ** 4 + G1 * H2 - 8 * G1 ** 4 * H1 ** 2 + 2 * G1 ** 3 * G2 + H1 ** 2 * G2) / den
    return g2, g3


def weierstrass_values(w: WardData) -> tuple[Fraction, Fraction]:
    """(wp(z), wp'(z)) = (g^2 G1, -2 g^3 H1)."""
    return w.gamma ** 2 * w.G1, -2 * w.gamma ** 3 * w.H1


def ward_data(curve: Curve, p: Point, gamma=1) -> WardData:
    seq = eval_sequences(curve, p, gamma, 4)
    if seq.H[2] is None:
        raise TorsionObstruction("the point has order 2 (F_2 = 0)")
    return WardData(seq.G[1], seq.G[2], seq.H[1], seq.H[2], gamma)


def _require_short(curve: Curve) -> None:
    if not curve.is_short:
        raise ParameterError("only short models y^2 = x^3 + ax + b are supported")


def recover_curve(curve: Curve, p: Point) -> tuple[Fraction, Fraction]:
    """(a, b) rebuilt from the sequences at P alone; equals (a4, a6) of ``curve``."""
    _require_short(curve)
    if p.is_infinity or not is_on_curve(curve, p):
        raise ParameterError(f"{p!r} is not an affine point of {curve!r}")
    g2, g3 = ward_invariants(ward_data(curve, p))
    return -g2 / 4, -g3 / 4


@dataclass
class IdentityReport:
    checks: dict = field(default_factory=dict)  # name -> bool
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def proof_chain_identities(curve: Curve, p: Point, gamma=1, n_max: int = 10) -> IdentityReport:
    """Check F2 = 2H1, F4 = 4H1H2, F3 = 4G1H1^2 - G2 and x([n]P) = g^2 G_n / F_n^2."""
    _require_short(curve)
    if p.is_infinity or not is_on_curve(curve, p):
        raise ParameterError(f"{p!r} is not an affine point of {curve!r}")
    seq = eval_sequences(curve, p, gamma, max(n_max, 4))
    F, G, H = seq.F, seq.G, seq.H
    if F[2] == 0:
        raise TorsionObstruction("the point has order 2 (F_2 = 0)")
    g = Fraction(gamma)
    rep = IdentityReport()
    rep.checks["F2 = 2 H1"] = F[2] == 2 * H[1]
    rep.checks["F4 = 4 H1 H2"] = F[4] == 4 * H[1] * H[2]
    rep.checks["F3 = 4 G1 H1^2 - G2"] = F[3] == 4 * G[1] * H[1] ** 2 - G[2]
    for n in range(1, n_max + 1):
        q = scalar_mul(curve, n, p)
        if F[n] == 0:
            ok = q.is_infinity
        else:
            ok = not q.is_infinity and q.x == g ** 2 * Fraction(G[n]) / Fraction(F[n]) ** 2
        rep.checks[f"x([{n}]P) = g^2 G_{n} / F_{n}^2"] = ok
    rep.failures = [k for k, v in rep.checks.items() if not v]
    return rep
