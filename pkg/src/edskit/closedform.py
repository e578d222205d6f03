"""Evaluate the piecewise general terms for Tate/Kubert families of torsion order N.

A general term is a signed product of powers of fixed polynomials in the
family parameter, with exponents ``(u*n^2 + offset)/d`` that depend on n mod m.
The printed tables live in ``closedform_tables``; known misprints are kept as
``Erratum`` records next to them and are applied (and reported) by default.

``validate_spec`` compares a table against the division-polynomial oracle and,
for every residue class that disagrees, fits replacement rows from the oracle
values by p-adic valuations.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Optional

from . import polyx
from .closedform_tables import BASES, ERRATA_DATA, TABLES
from .divpoly import eval_sequences
from .errors import ConsistencyError, ParameterError
from .tate import ALL_ORDERS, EXCLUDED_ALPHA, admissible_alphas, admissible_pairs, family_member


class TableTranscriptionError(ConsistencyError):
    """A table row yields a non-integral or negative exponent."""


Row = tuple  # (u, d, offset)


@dataclass(frozen=True)
class Factor:
    base: str
    rows: dict  # residue mod m -> (u, d, offset)

    @property
    def poly(self) -> tuple:
        return BASES[self.base]

    def exponent(self, n: int, m: int) -> Fraction:
        u, d, off = self.rows[n % m]
        return Fraction(u * n * n + off, d)


@dataclass(frozen=True)
class Erratum:
    N: int
    target: str
    residue: int
    base: Optional[str]  # None for a sign-table erratum
    printed: tuple
    fitted: tuple
    note: str = ""

    @property
    def key(self) -> str:
        what = self.base if self.base else "sign"
        return f"N={self.N} {self.target} {what} n%{'m' if self.base else 's'}={self.residue}"

    def describe(self) -> str:
        if self.base is None:
            return f"{self.key}: printed sign {self.printed[0]:+d}, fitted {self.fitted[0]:+d}"
        pu, pd, po = self.printed
        fu, fd, fo = self.fitted
        return f"{self.key}: printed ({pu}n^2{po:+d})/{pd}, fitted ({fu}n^2{fo:+d})/{fd}"


@dataclass(frozen=True)
class ClosedFormSpec:
    N: int
    target: str  # "F", "G" or "H"
    modulus: int
    zeros: frozenset
    sign_modulus: int
    minus: frozenset  # residues mod sign_modulus with sign -1
    factors: tuple
    ref: str = ""
    errata: tuple = ()

    @property
    def label(self) -> str:
        return f"{self.target}[N={self.N}]"

    def is_zero_at(self, n: int) -> bool:
        return n % self.modulus in self.zeros

    def sign_at(self, n: int) -> int:
        return -1 if n % self.sign_modulus in self.minus else 1


@dataclass(frozen=True)
class ClosedFormValue:
    sign: int  # 0 for the zero term
    factorization: tuple = ()  # ((base name, base value, exponent), ...)
    value: int = 0
    errata: tuple = field(default=(), compare=False)

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    @classmethod
    def zero(cls) -> "ClosedFormValue":
        return cls(0)


# --- loading ------------------------------------------------------------------------

def printed_spec(N: int, target: str) -> ClosedFormSpec:
    """The table exactly as printed, with no errata and no load-time checks."""
    try:
        raw = TABLES[(N, target)]
    except KeyError:
        raise ParameterError(f"no closed form for {target}_n with N={N}") from None
    factors = tuple(
        Factor(base, {r: (u, d, off) for r, off in offsets.items()})
        for base, u, d, offsets in raw["factors"]
    )
    return ClosedFormSpec(
        N, target, raw["modulus"], raw["zeros"], raw["sign_modulus"], raw["minus"], factors, raw["ref"]
    )


def known_errata(N: Optional[int] = None, target: Optional[str] = None) -> list[Erratum]:
    out = [Erratum(**e) for e in ERRATA_DATA]
    return [e for e in out if (N is None or e.N == N) and (target is None or e.target == target)]


def apply_errata(spec: ClosedFormSpec, errata: Iterable[Erratum]) -> ClosedFormSpec:
    errata = tuple(errata)
    factors = list(spec.factors)
    minus = set(spec.minus)
    for e in errata:
        if e.base is None:
            (sgn,) = e.fitted
            minus.discard(e.residue)
            if sgn < 0:
                minus.add(e.residue)
            continue
        for i, f in enumerate(factors):
            if f.base == e.base:
                rows = dict(f.rows)
                if rows.get(e.residue) != e.printed:
                    raise TableTranscriptionError(f"erratum {e.key} does not match the printed row")
                rows[e.residue] = e.fitted
                factors[i] = Factor(f.base, rows)
                break
        else:
            raise TableTranscriptionError(f"erratum {e.key} names an unknown factor")
    return replace(spec, factors=tuple(factors), minus=frozenset(minus), errata=spec.errata + errata)


def check_exponents(spec: ClosedFormSpec, skip: Iterable = ()) -> None:
    """Every nonzero residue needs a row; exponents on r, r+m, r+2m must be integers >= 0."""
    skip = set(skip)
    m = spec.modulus
    for r in range(m):
        if r in spec.zeros:
            continue
        for f in spec.factors:
            if r not in f.rows:
                raise TableTranscriptionError(f"{spec.label}: factor {f.base} has no row for n%{m}={r}")
            if (f.base, r) in skip:
                continue
            for n in (r or m, (r or m) + m, (r or m) + 2 * m):
                e = f.exponent(n, m)
                if e.denominator != 1 or e < 0:
                    raise TableTranscriptionError(
                        f"{spec.label}: exponent of {f.base} at n={n} is {e}, not a nonnegative integer"
                    )


@functools.lru_cache(maxsize=None)
def load_spec(N: int, target: str, printed: bool = False) -> ClosedFormSpec:
    """The closed form for ``target`` in {"F", "G", "H"}; errata applied unless ``printed``."""
    spec = printed_spec(N, target)
    errata = known_errata(N, target)
    if printed:
        check_exponents(spec, skip={(e.base, e.residue) for e in errata})
        return spec
    spec = apply_errata(spec, errata)
    check_exponents(spec)
    return spec


# --- evaluation -----------------------------------------------------------------------

def family_param(N: int, param) -> int:
    if N not in ALL_ORDERS:
        raise ParameterError(f"N must be one of {ALL_ORDERS}, got {N}")
    if isinstance(param, (tuple, list)):
        if N not in (2, 3) or len(param) != 2:
            raise ParameterError(f"bad parameter {param!r} for N={N}")
        param = param[1]
    if isinstance(param, Fraction):
        if param.denominator != 1:
            raise ParameterError("family parameters must be integers")
        param = param.numerator
    if not isinstance(param, int):
        raise ParameterError(f"family parameter must be an integer, got {param!r}")
    if N in (2, 3):
        if param == 0:
            raise ParameterError(f"the {'a4' if N == 2 else 'a3'} coefficient must be nonzero")
    elif param in EXCLUDED_ALPHA[N]:
        raise ParameterError(f"alpha={param} is excluded for N={N}")
    return param


def evaluate(spec: ClosedFormSpec, param: int, n: int) -> ClosedFormValue:
    if n < 0:
        raise ParameterError("n must be >= 0")
    if n == 0:
        return ClosedFormValue.zero() if spec.target == "F" else ClosedFormValue(1, (), 1)
    if spec.is_zero_at(n):
        return ClosedFormValue.zero()
    m = spec.modulus
    parts = []
    value = spec.sign_at(n)
    for f in spec.factors:
        e = f.exponent(n, m)
        if e.denominator != 1 or e < 0:
            raise TableTranscriptionError(f"{spec.label}: exponent of {f.base} at n={n} is {e}")
        bv = polyx.evaluate(f.poly, param)
        parts.append((f.base, bv, int(e)))
        value *= bv ** int(e)
    used = tuple(
        e.key for e in spec.errata
        if e.residue == (n % m if e.base else n % spec.sign_modulus)
    )
    return ClosedFormValue(spec.sign_at(n), tuple(parts), value, used)


def h_closed_n8(alpha, n: int, printed: bool = False) -> ClosedFormValue:
    """h_n = F_n on the integral order-8 model."""
    a = family_param(8, alpha)
    if n < 1:
        raise ParameterError("n must be >= 1")
    return evaluate(load_spec(8, "F", printed), a, n)


def g_closed(N: int, param, n: int, printed: bool = False) -> ClosedFormValue:
    a = family_param(N, param)
    return evaluate(load_spec(N, "G", printed), a, n)


def h_closed(N: int, param, n: int, printed: bool = False) -> ClosedFormValue:
    if N == 2:
        raise ParameterError("H_n is not defined for the order-2 family (F_2 = 0)")
    a = family_param(N, param)
    return evaluate(load_spec(N, "H", printed), a, n)


# --- validation against the oracle ----------------------------------------------------------

def default_params(N: int, bound: int) -> list:
    """Admissible integer parameters with |param| <= bound (pairs for N = 2, 3)."""
    if N in (2, 3):
        return admissible_pairs(N, -bound, bound)
    return admissible_alphas(N, -bound, bound)


def oracle_terms(N: int, param, target: str, n_max: int) -> list:
    tc = family_member(N, *(param if isinstance(param, tuple) else (param,)))
    seq = eval_sequences(tc.curve, tc.point, 1, n_max)
    return {"F": seq.F, "G": seq.G, "H": seq.H}[target]


@dataclass
class FittedRow:
    residue: int
    base: Optional[str]
    printed: tuple
    fitted: Optional[tuple]  # None when no consistent fit exists

    def as_erratum(self, spec: ClosedFormSpec) -> Optional[Erratum]:
        if self.fitted is None:
            return None
        return Erratum(spec.N, spec.target, self.residue, self.base, self.printed, self.fitted, "oracle fit")


@dataclass
class ValidationReport:
    label: str
    checked: int = 0
    mismatches: list = field(default_factory=list)  # (param, n, closed form, oracle)
    bad_residues: list = field(default_factory=list)
    fits: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    @property
    def first_mismatch(self):
        return min(self.mismatches, key=lambda t: (t[1], str(t[0]))) if self.mismatches else None

    def errata(self, spec: ClosedFormSpec) -> list[Erratum]:
        return [e for e in (f.as_erratum(spec) for f in self.fits) if e is not None]


def validate_spec(spec: ClosedFormSpec, params=None, n_max: Optional[int] = None, fit: bool = True,
                  oracle: Optional[dict] = None) -> ValidationReport:
    """Compare ``spec`` with eval_sequences (gamma = 1) for every param and 1 <= n <= n_max.

    ``oracle`` may map param -> precomputed term list to share work across specs.
    """
    N = spec.N
    params = default_params(N, 8 if N >= 4 else 4) if params is None else list(params)
    n_max = 4 * N if n_max is None else n_max
    report = ValidationReport(spec.label)
    values = {}
    for p in params:
        p = tuple(p) if isinstance(p, (list, tuple)) else p
        terms = oracle[p] if oracle and p in oracle else oracle_terms(N, p, spec.target, n_max)
        values[p] = terms
        fam = p[1] if isinstance(p, tuple) else p
        for n in range(1, n_max + 1):
            try:
                got = evaluate(spec, fam, n).value
            except TableTranscriptionError:
                got = None
            report.checked += 1
            if got != terms[n]:
                report.mismatches.append((p, n, got, terms[n]))
    bad = sorted({n % spec.modulus for _, n, _, _ in report.mismatches})
    report.bad_residues = bad
    if fit:
        for r in bad:
            report.fits.extend(_fit_residue(spec, r, values, n_max))
    return report


def _valuation(v: int, p: int) -> int:
    v = abs(v)
    if v == 0:
        raise ValueError("valuation of zero")
    e = 0
    powers = [p]
    while v % powers[-1] == 0:
        v //= powers[-1]
        e += 1 << (len(powers) - 1)
        powers.append(powers[-1] * powers[-1])
    for k in range(len(powers) - 2, -1, -1):
        if v % powers[k] == 0:
            v //= powers[k]
            e += 1 << k
    return e


def _prime_factors(n: int) -> list[int]:
    n = abs(n)
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _fit_residue(spec: ClosedFormSpec, r: int, values: dict, n_max: int) -> list[FittedRow]:
    m = spec.modulus
    ns = [n for n in range(1, n_max + 1) if n % m == r]
    if any(values[p][n] == 0 for p in values for n in ns) or spec.is_zero_at(r or m):
        # zero pattern disagrees, nothing sensible to fit
        return [FittedRow(r, None, ("zero-pattern",), None)]
    fam = {p: (p[1] if isinstance(p, tuple) else p) for p in values}
    base_vals = {p: [polyx.evaluate(f.poly, fam[p]) for f in spec.factors] for p in values}
    fitted_rows = []
    exps = {}
    for i, f in enumerate(spec.factors):
        witness = None
        for p, bv in base_vals.items():
            for q in _prime_factors(bv[i]):
                if all(bv[j] % q for j in range(len(bv)) if j != i):
                    witness = (p, q)
                    break
            if witness:
                break
        if witness is None:
            return [FittedRow(r, f.base, f.rows[r], None)]
        p, q = witness
        per_n = {}
        for n in ns:
            e = Fraction(_valuation(values[p][n], q), _valuation(base_vals[p][i], q))
            per_n[n] = e
        a_coef, b_coef = _quadratic_fit(per_n, f.rows[r])
        if a_coef is None:
            return [FittedRow(r, f.base, f.rows[r], None)]
        den = math.lcm(a_coef.denominator, b_coef.denominator)
        pu, pd, _ = f.rows[r]
        if Fraction(pu, pd) == a_coef and (b_coef * pd).denominator == 1:
            row = (pu, pd, int(b_coef * pd))
        else:
            row = (int(a_coef * den), den, int(b_coef * den))
        exps[f.base] = {n: per_n[n] for n in ns}
        if row != f.rows[r]:
            fitted_rows.append(FittedRow(r, f.base, f.rows[r], row))
    # signs, per residue mod sign_modulus
    signs = {}
    for p, bv in base_vals.items():
        for n in ns:
            mag = 1
            for i, f in enumerate(spec.factors):
                mag *= bv[i] ** int(exps[f.base][n])
            if values[p][n] == mag:
                s = 1
            elif values[p][n] == -mag:
                s = -1
            else:
                return [FittedRow(r, None, ("product",), None)]
            key = n % spec.sign_modulus
            if signs.setdefault(key, s) != s:
                return [FittedRow(r, None, ("sign",), None)]
    for key, s in sorted(signs.items()):
        if s != spec.sign_at(key):
            fitted_rows.append(FittedRow(key, None, (spec.sign_at(key),), (s,)))
    return fitted_rows


def _quadratic_fit(per_n: dict, printed_row: tuple):
    """Fit e(n) = A n^2 + B over the class; with one sample keep the printed A."""
    for e in per_n.values():
        if e.denominator != 1:
            return None, None
    ns = sorted(per_n)
    if len(ns) == 1:
        u, d, _ = printed_row
        a = Fraction(u, d)
    else:
        n1, n2 = ns[0], ns[1]
        a = (per_n[n2] - per_n[n1]) / (n2 * n2 - n1 * n1)
    b = per_n[ns[0]] - a * ns[0] ** 2
    if any(a * n * n + b != per_n[n] for n in ns):
        return None, None
    return a, b


def supported() -> list[tuple[int, str]]:
    return sorted(TABLES)


def orders_with(target: str) -> list[int]:
    return [N for N in ALL_ORDERS if (N, target) in TABLES]


# --- text serialisation -----------------------------------------------------------

def _fmt_poly(coeffs: tuple) -> str:
    return " ".join(str(c) for c in coeffs)


def dump_spec(spec: ClosedFormSpec) -> str:
    """Human-auditable text: header lines, then one factor per line.

    factor <name> | <poly coeffs low->high> | u=<u> d=<d> | r:offset ...
    Rows whose u/d differ from the factor's common pair are written r:offset@u/d.
    """
    lines = [
        f"# {spec.ref}" if spec.ref else f"# {spec.label}",
        f"N {spec.N}",
        f"target {spec.target}",
        f"modulus {spec.modulus}",
        "zeros " + " ".join(str(z) for z in sorted(spec.zeros)),
        f"sign_modulus {spec.sign_modulus}",
        "minus " + " ".join(str(z) for z in sorted(spec.minus)),
    ]
    for f in spec.factors:
        u, d = _common_ud(f)
        pairs = []
        for r in sorted(f.rows):
            fu, fd, off = f.rows[r]
            pairs.append(f"{r}:{off}" if (fu, fd) == (u, d) else f"{r}:{off}@{fu}/{fd}")
        lines.append(f"factor {f.base} | {_fmt_poly(f.poly)} | u={u} d={d} | " + " ".join(pairs))
    for e in spec.errata:
        lines.append(f"erratum {e.describe()}")
    return "\n".join(lines) + "\n"


def _common_ud(f: Factor) -> tuple[int, int]:
    counts = {}
    for u, d, _ in f.rows.values():
        counts[(u, d)] = counts.get((u, d), 0) + 1
    return max(counts, key=lambda k: (counts[k], k))


def parse_spec(text: str) -> ClosedFormSpec:
    """Inverse of ``dump_spec`` (erratum lines are informational and skipped)."""
    head = {}
    factors = []
    ref = ""
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            ref = line[1:].strip()
            continue
        key, _, rest = line.partition(" ")
        if key == "factor":
            name, poly, ud, rows = (s.strip() for s in rest.split("|"))
            if name not in BASES or tuple(int(c) for c in poly.split()) != BASES[name]:
                raise ParameterError(f"unknown base {name!r} / {poly!r}")
            u = int(ud.split()[0].split("=")[1])
            d = int(ud.split()[1].split("=")[1])
            parsed = {}
            for item in rows.split():
                r, _, off = item.partition(":")
                if "@" in off:
                    off, _, frac = off.partition("@")
                    fu, fd = (int(t) for t in frac.split("/"))
                    parsed[int(r)] = (fu, fd, int(off))
                else:
                    parsed[int(r)] = (u, d, int(off))
            factors.append(Factor(name, parsed))
        elif key != "erratum":
            head[key] = rest
    ints = lambda s: frozenset(int(t) for t in s.split())
    return ClosedFormSpec(
        int(head["N"]), head["target"], int(head["modulus"]), ints(head.get("zeros", "")),
        int(head["sign_modulus"]), ints(head.get("minus", "")), tuple(factors), ref,
    )
