"""Square and cube terms of the G and H sequences of the torsion families.

Verdicts are stored per (N, target, power) as residue rules; ``classify``
looks a term up, ``eval_condition`` decides an alpha-condition, and
``verify_classification`` checks both against brute-force perfect-power tests
on the actual sequence values.

"Square" follows the sign-blind convention (|v| a nonzero square); cubes keep
their sign.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from . import polyx
from .arith import is_cube_term, is_square_term, pell_solutions
from .closedform import load_spec
from .divpoly import eval_sequences
from .errors import ParameterError
from .tate import admissible_alphas, family_member

SQUARE, CUBE = "square", "cube"


# --- conditions ---------------------------------------------------------------------

@dataclass(frozen=True)
class AlwaysHolds:
    def describe(self) -> str:
        return "true"


@dataclass(frozen=True)
class NeverHolds:
    def describe(self) -> str:
        return "false"


@dataclass(frozen=True)
class IsSquareTerm:
    poly: tuple  # integer coefficients, lowest degree first
    label: str

    def describe(self) -> str:
        return f"{self.label}=□"


@dataclass(frozen=True)
class IsCubeTerm:
    poly: tuple
    label: str

    def describe(self) -> str:
        return f"{self.label}=C"


@dataclass(frozen=True)
class Conjunction:
    parts: tuple

    def describe(self) -> str:
        return " and ".join(p.describe() for p in self.parts) or "true"


Condition = Union[AlwaysHolds, NeverHolds, IsSquareTerm, IsCubeTerm, Conjunction]

# the polynomials that occur in the verdicts
POLYS = {
    "alpha": ((0, 1), "α"),
    "alpha-1": ((-1, 1), "α−1"),
    "alpha+1": ((1, 1), "α+1"),
    "2alpha-1": ((-1, 2), "2α−1"),
    "(alpha-1)(2alpha-1)": ((1, -3, 2), "(α−1)(2α−1)"),
    "alpha(alpha-1)(2alpha-1)": ((0, 1, -3, 2), "α(α−1)(2α−1)"),
    "alpha(alpha-1)": ((0, -1, 1), "α(α−1)"),
    "eta": ((1, -1, 1), "α²−α+1"),
    "alpha^2-3alpha+1": ((1, -3, 1), "α²−3α+1"),
    "theta": ((-1, 2, -2), "2α−2α²−1"),
    "a4": ((0, 1), "a4"),
    "a3": ((0, 1), "a3"),
}


def square_of(name: str) -> IsSquareTerm:
    return IsSquareTerm(*POLYS[name])


def cube_of(name: str) -> IsCubeTerm:
    return IsCubeTerm(*POLYS[name])


def eval_condition(c: Condition, alpha: int) -> bool:
    if isinstance(c, AlwaysHolds):
        return True
    if isinstance(c, NeverHolds):
        return False
    if isinstance(c, IsSquareTerm):
        return is_square_term(polyx.evaluate(c.poly, alpha))
    if isinstance(c, IsCubeTerm):
        return is_cube_term(polyx.evaluate(c.poly, alpha))
    if isinstance(c, Conjunction):
        return all(eval_condition(p, alpha) for p in c.parts)
    raise TypeError(f"not a condition: {c!r}")


def search_alphas(c: Condition, lo: int, hi: int, exclusions: Iterable[int] = ()) -> list[int]:
    if lo > hi:
        raise ParameterError("lo must be <= hi")
    skip = set(exclusions)
    return [a for a in range(lo, hi + 1) if a not in skip and eval_condition(c, a)]


def alphas_from_pell(count: int) -> list[int]:
    """First ``count`` alphas > 1 with (alpha-1)(2alpha-1) a square, via tau^2 - 8 beta^2 = 1."""
    if count < 1:
        raise ParameterError("count must be >= 1")
    cond = square_of("(alpha-1)(2alpha-1)")
    out = []
    k = 2 * count + 2
    while len(out) < count:
        out = []
        for tau, _ in pell_solutions(8, k):
            if tau % 4 == 1:
                a = (tau + 3) // 4
                assert eval_condition(cond, a)
                out.append(a)
                if len(out) == count:
                    break
        k *= 2
    return out


# --- classifications ------------------------------------------------------------------

@dataclass(frozen=True)
class ZeroTerm:
    kind = "zero"

    def describe(self) -> str:
        return "zero term"


@dataclass(frozen=True)
class Always:
    kind = "always"

    def describe(self) -> str:
        return "always"


@dataclass(frozen=True)
class Never:
    kind = "never"

    def describe(self) -> str:
        return "never"


@dataclass(frozen=True)
class Iff:
    condition: Condition
    kind = "iff"

    def describe(self) -> str:
        return "iff " + self.condition.describe()


Classification = Union[ZeroTerm, Always, Never, Iff]


def _iff_sq(name):
    return Iff(square_of(name))


def _iff_cu(name):
    return Iff(cube_of(name))


A, X = Always(), Never()

# (N, target, power) -> (modulus, [(residues, verdict), ...], otherwise, ref)
VERDICTS = {
    (2, "G", SQUARE): (1, [], A, "N=2 G square"),
    (2, "G", CUBE): (6, [((0,), A)], _iff_cu("a4"), "N=2 G cube"),
    (3, "G", SQUARE): (1, [], A, "N=3 G square"),
    (3, "G", CUBE): (1, [], A, "N=3 G cube"),
    (3, "H", SQUARE): (6, [((0, 2), A)], _iff_sq("a3"), "N=3 H square"),
    (3, "H", CUBE): (3, [((0,), A)], _iff_cu("a3"), "N=3 H cube"),

    (4, "G", SQUARE): (4, [((0,), A)], _iff_sq("alpha"), "N=4 G square"),
    (4, "G", CUBE): (1, [], A, "N=4 G cube"),
    (5, "G", SQUARE): (5, [((0,), A)], _iff_sq("alpha"), "N=5 G square"),
    (5, "G", CUBE): (15, [((0, 2, 7, 8, 13), A)], _iff_cu("alpha"), "N=5 G cube"),
    (6, "G", SQUARE): (6, [((0,), A), ((3,), _iff_sq("alpha"))], X, "N=6 G square"),
    (6, "G", CUBE): (18, [((0, 2, 6, 12, 16), A), ((3, 9, 15), _iff_cu("alpha"))], X, "N=6 G cube"),
    (7, "G", SQUARE): (7, [((0,), A), ((2, 5), _iff_sq("alpha-1"))], X, "N=7 G square"),
    (7, "G", CUBE): (21, [((0, 2, 5, 16, 19), A), ((7, 9, 12, 14), _iff_cu("alpha"))], X, "N=7 G cube"),
    (8, "G", SQUARE): (8, [((0,), A), ((2, 6), _iff_sq("(alpha-1)(2alpha-1)"))], X, "N=8 G square"),
    (8, "G", CUBE): (24, [((0,), A), ((2, 10, 14, 22), _iff_cu("alpha")),
                          ((8, 16), _iff_cu("alpha-1"))], X, "N=8 G cube"),
    (9, "G", SQUARE): (9, [((0,), A), ((3, 6), _iff_sq("alpha-1"))], X, "N=9 G square"),
    (9, "G", CUBE): (27, [((0, 2, 9, 18, 25), A), ((5, 22), _iff_cu("eta"))], X, "N=9 G cube"),
    (10, "G", SQUARE): (10, [((0,), A), ((4, 6), _iff_sq("(alpha-1)(2alpha-1)"))], X, "N=10 G square"),
    (10, "G", CUBE): (30, [((0,), A), ((2, 8, 22, 28), _iff_cu("alpha^2-3alpha+1")),
                           ((12, 18), _iff_cu("2alpha-1"))], X, "N=10 G cube"),
    (12, "G", SQUARE): (12, [((0,), A)], X, "N=12 G square"),
    (12, "G", CUBE): (36, [((0, 12, 24), A), ((16, 20), _iff_cu("alpha")),
                           ((2, 34), _iff_cu("alpha-1"))], X, "N=12 G cube"),

    (4, "H", SQUARE): (8, [((0, 3, 4), A)], _iff_sq("alpha"), "N=4 H square"),
    (4, "H", CUBE): (4, [((0,), A)], _iff_cu("alpha"), "N=4 H cube"),
    (5, "H", SQUARE): (5, [((0,), A)], _iff_sq("alpha"), "N=5 H square"),
    (5, "H", CUBE): (5, [((0,), A)], _iff_cu("alpha"), "N=5 H cube"),
    (6, "H", SQUARE): (12, [((0, 8), A), ((2, 6), _iff_sq("alpha"))], X, "N=6 H square"),
    (6, "H", CUBE): (6, [((0,), A), ((3,), _iff_cu("alpha"))], X, "N=6 H cube"),
    (7, "H", SQUARE): (14, [((0, 9, 10), A), ((4, 6), _iff_sq("alpha")),
                            ((11, 13), _iff_sq("alpha-1"))], X, "N=7 H square"),
    (7, "H", CUBE): (7, [((0,), A), ((2,), _iff_cu("alpha-1"))], X, "N=7 H cube"),
    (8, "H", SQUARE): (16, [((0, 4, 8, 12), A), ((3,), _iff_sq("alpha-1")),
                            ((5, 7), _iff_sq("2alpha-1")), ((11,), _iff_sq("alpha"))], X, "N=8 H square"),
    (8, "H", CUBE): (8, [((0,), A)], X, "N=8 H cube"),
    (9, "H", SQUARE): (18, [((0, 13, 14), A), ((2, 12), _iff_sq("alpha-1"))], X, "N=9 H square"),
    (9, "H", CUBE): (9, [((0,), A), ((3,), _iff_cu("alpha-1"))], X, "N=9 H cube"),
    (10, "H", SQUARE): (20, [((0, 5, 15, 16), A), ((4, 12), _iff_sq("2alpha-1")),
                             ((3, 13), _iff_sq("(alpha-1)(2alpha-1)"))], X, "N=10 H square"),
    (10, "H", CUBE): (10, [((0,), A)], X, "N=10 H cube"),
    (12, "H", SQUARE): (24, [((0, 8, 12, 19, 20), A), ((4, 16), _iff_sq("theta"))], X, "N=12 H square"),
    (12, "H", CUBE): (12, [((0,), A)], X, "N=12 H cube"),
}

ORDERS = (2, 3, 4, 5, 6, 7, 8, 9, 10, 12)


@dataclass(frozen=True)
class SquareCubeQuery:
    N: int
    target: str
    power: str
    n: int

    def __post_init__(self):
        if self.N not in ORDERS:
            raise ParameterError(f"N must be one of {ORDERS}")
        if self.target not in ("G", "H"):
            raise ParameterError("target must be G or H")
        if self.power not in (SQUARE, CUBE):
            raise ParameterError("power must be square or cube")
        if self.N == 2 and self.target == "H":
            raise ParameterError("H_n is not defined for the order-2 family")
        if self.n < 1:
            raise ParameterError("n must be >= 1")


def classify(q: SquareCubeQuery) -> Classification:
    if load_spec(q.N, q.target).is_zero_at(q.n):
        return ZeroTerm()
    modulus, rules, otherwise, _ = VERDICTS[(q.N, q.target, q.power)]
    r = q.n % modulus
    for residues, verdict in rules:
        if r in residues:
            return verdict
    return otherwise


def verdict_holds(c: Classification, alpha: int) -> Optional[bool]:
    """Predicted truth of "term is a square/cube" at alpha; None for zero terms."""
    if isinstance(c, ZeroTerm):
        return None
    if isinstance(c, Always):
        return True
    if isinstance(c, Never):
        return False
    return eval_condition(c.condition, alpha)


# --- verification -----------------------------------------------------------------------

@dataclass
class ClassificationReport:
    N: int
    target: str
    power: str
    checked: int = 0
    zero_terms: int = 0
    disagreements: list = field(default_factory=list)  # (param, n, verdict, predicted, actual)
    # terms where the strict reading (positive square) would disagree; squares only
    literal_disagreements: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements


def grid_params(N: int, lo: int, hi: int) -> list:
    if N in (2, 3):
        # the verdicts only involve the second coefficient; vary the first over a small band
        firsts = [p for p in range(-3, 4)]
        return [(p, q) for q in range(lo, hi + 1) if q != 0 for p in firsts
                if _nonsingular_pair(N, p, q)]
    return admissible_alphas(N, lo, hi)


def _nonsingular_pair(N, p, q) -> bool:
    try:
        family_member(N, p, q)
    except ParameterError:
        return False
    return True


def _terms_for(args):
    N, param, n_max = args
    params = param if isinstance(param, tuple) else (param,)
    tc = family_member(N, *params)
    seq = eval_sequences(tc.curve, tc.point, 1, n_max)
    return param, seq.G, seq.H


def _check_param(N, param, G, H, n_max, jobs_targets):
    fam = param[1] if isinstance(param, tuple) else param
    results = {}
    for target, power in jobs_targets:
        terms = G if target == "G" else H
        rows = []
        for n in range(1, n_max + 1):
            verdict = classify(SquareCubeQuery(N, target, power, n))
            v = terms[n]
            if isinstance(verdict, ZeroTerm):
                rows.append(("zero", n, v == 0, verdict, None, None, None))
                continue
            predicted = verdict_holds(verdict, fam)
            actual = is_square_term(v) if power == SQUARE else is_cube_term(v)
            literal = None
            if power == SQUARE:
                literal = v > 0 and actual
            rows.append(("term", n, v == 0, verdict, predicted, actual, literal))
        results[(target, power)] = rows
    return param, results


def _work(args):
    N, param, n_max, jobs_targets = args
    _, G, H = _terms_for((N, param, n_max))
    return _check_param(N, param, G, H, n_max, jobs_targets)


def verify_many(N: int, combos: Iterable[tuple[str, str]], alpha_range=(-30, 30),
                n_max: Optional[int] = None, jobs: int = 1) -> dict:
    """Run several (target, power) checks for one family sharing the sequence computation."""
    combos = [tuple(c) for c in combos]
    for target, power in combos:
        SquareCubeQuery(N, target, power, 1)
    n_max = 6 * N if n_max is None else n_max
    params = grid_params(N, *alpha_range)
    tasks = [(N, p, n_max, combos) for p in params]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_work, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [_work(t) for t in tasks]
    results.sort(key=lambda r: (isinstance(r[0], tuple), r[0]))
    reports = {c: ClassificationReport(N, *c) for c in combos}
    for param, per_combo in results:
        for combo, rows in per_combo.items():
            rep = reports[combo]
            for kind, n, is_zero, verdict, predicted, actual, literal in rows:
                if kind == "zero":
                    rep.zero_terms += 1
                    if not is_zero:
                        rep.disagreements.append((param, n, verdict.describe(), None, "nonzero term"))
                    continue
                rep.checked += 1
                if is_zero:
                    rep.disagreements.append((param, n, verdict.describe(), predicted, "zero term"))
                elif predicted != actual:
                    rep.disagreements.append((param, n, verdict.describe(), predicted, actual))
                elif literal is not None and literal != predicted:
                    rep.literal_disagreements.append((param, n, verdict.describe(), predicted, literal))
    return reports


def verify_classification(N: int, target: str, power: str, alpha_range=(-30, 30),
                          n_max: Optional[int] = None, jobs: int = 1) -> ClassificationReport:
    return verify_many(N, [(target, power)], alpha_range, n_max, jobs)[(target, power)]


def all_combos(N: int) -> list[tuple[str, str]]:
    targets = ("G",) if N == 2 else ("G", "H")
    return [(t, p) for t in targets for p in (SQUARE, CUBE)]
