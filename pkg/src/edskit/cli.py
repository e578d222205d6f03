"""Command-line front end.

Every command writes one JSON document (or CSV for ``seq --format csv``) to
stdout.  Integers and rationals are written as decimal strings.  A metadata
line with a timestamp goes to stderr unless ``--plain`` is given, so stdout is
byte-identical across runs.

Exit status: 0 on success, 1 on an internal consistency failure (including a
``verify`` mismatch outside the recorded errata), 2 on bad parameters.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__
from .analytic import recover_curve, ward_data, ward_invariants
from .arith import pell_solutions
from .closedform import (
    default_params, evaluate, family_param, known_errata, load_spec, validate_spec,
)
from .curve import Curve, Point, to_q
from .divpoly import eval_sequences
from .errors import ConsistencyError, ParameterError
from .squarecube import (
    CUBE, ORDERS, SQUARE, Iff, SquareCubeQuery, all_combos, classify, verdict_holds, verify_many,
)
from .tate import family_member

SCHEMA_VERSION = 1


def encode(v):
    """JSON-safe form: numbers as decimal strings."""
    if v is None or isinstance(v, bool):
        return v
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [encode(x) for x in v]
    if isinstance(v, dict):
        return {k: encode(x) for k, x in v.items()}
    return v


def encode_params(v):
    """Parameters keep native ints; rationals become strings."""
    if isinstance(v, Fraction):
        return encode(v)
    if isinstance(v, (list, tuple)):
        return [encode_params(x) for x in v]
    if isinstance(v, dict):
        return {k: encode_params(x) for k, x in v.items()}
    return v


def _numbers(text: str) -> list[Fraction]:
    try:
        return [to_q(part.strip()) for part in text.split(",") if part.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise ParameterError(f"cannot parse numbers from {text!r}") from exc


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParameterError(f"not an integer: {text!r}") from None


def parse_family(text: str):
    """"N:alpha" or, for N = 2, 3, "N:p,q"."""
    head, sep, rest = text.partition(":")
    if not sep:
        raise ParameterError(f"expected N:alpha, got {text!r}")
    N = _int(head)
    params = tuple(_int(t) for t in rest.split(","))
    return N, params


def _curve_and_point(args):
    if args.tate:
        N, params = parse_family(args.tate)
        tc = family_member(N, *params)
        return tc.curve, tc.point, {"family": {"N": N, "params": list(params)}}
    if not args.curve or not args.point:
        raise ParameterError("give --tate, or both --curve and --point")
    curve = Curve.from_coefficients(_numbers(args.curve))
    xy = _numbers(args.point)
    if len(xy) != 2:
        raise ParameterError("--point takes x,y")
    return curve, Point(*xy), {"curve": list(curve.coefficients), "point": xy}


def _param_for(N: int, text: str):
    values = [_int(t) for t in text.split(",")]
    if len(values) == 2 and N in (2, 3):
        return tuple(values)
    if len(values) != 1:
        raise ParameterError(f"bad parameter {text!r} for N={N}")
    return values[0]


UNDEFINED = "undefined"


def _h_column(H):
    return [UNDEFINED if h is None else h for h in H]


def cmd_seq(args):
    curve, p, params = _curve_and_point(args)
    seq = eval_sequences(curve, p, to_q(args.gamma), args.n)
    params.update(gamma=to_q(args.gamma), n=args.n)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "F", "G", "H"])
        for n in range(args.n + 1):
            w.writerow([n] + encode([seq.F[n], seq.G[n], _h_column(seq.H)[n]]))
        return buf.getvalue(), 0
    return {"params": params, "result": {"F": seq.F, "G": seq.G, "H": _h_column(seq.H)}}, 0


def cmd_closedform(args):
    param = _param_for(args.N, args.alpha)
    if args.target == "H" and args.N == 2:
        raise ParameterError("H_n is not defined for the order-2 family")
    spec = load_spec(args.N, args.target, printed=args.printed)
    fam = family_param(args.N, param)
    terms = []
    for n in range(args.n_min, args.n_max + 1):
        v = evaluate(spec, fam, n)
        terms.append({
            "n": n,
            "value": v.value,
            "sign": v.sign,
            "factors": [{"base": b, "at": bv, "exponent": e} for b, bv, e in v.factorization],
            "errata": list(v.errata),
        })
    params = {"N": args.N, "param": param, "target": args.target, "printed": args.printed}
    errata = [e.describe() for e in spec.errata]
    return {"params": params, "result": {"terms": terms, "errata_applied": errata}}, 0


def cmd_verify(args):
    orders = ORDERS if args.N is None else [args.N]
    out, failed = [], False
    if args.what in ("closedform", "all"):
        for N in orders:
            bound = args.alpha_bound if N >= 4 else args.pair_bound
            params = default_params(N, bound)
            targets = ["G"] if N == 2 else ["G", "H"]
            if N == 8:
                targets.insert(0, "F")
            for t in targets:
                rep = validate_spec(load_spec(N, t), params, args.n_max or 4 * N, fit=True)
                failed |= not rep.ok
                out.append({
                    "check": "closedform", "N": N, "target": t, "checked": rep.checked, "ok": rep.ok,
                    "first_mismatch": rep.first_mismatch, "errata": [e.describe() for e in known_errata(N, t)],
                })
    if args.what in ("classify", "all"):
        for N in orders:
            reps = verify_many(N, all_combos(N), (-args.alpha_bound, args.alpha_bound),
                               args.n_max or 6 * N, args.jobs)
            for (t, pw), rep in reps.items():
                failed |= not rep.ok
                out.append({
                    "check": "classify", "N": N, "target": t, "power": pw, "checked": rep.checked,
                    "ok": rep.ok, "disagreements": rep.disagreements[:20],
                    "literal_reading_disagreements": len(rep.literal_disagreements),
                })
    params = {"N": args.N, "what": args.what, "alpha_bound": args.alpha_bound, "n_max": args.n_max}
    return {"params": params, "result": {"ok": not failed, "reports": out}}, 1 if failed else 0


def cmd_classify(args):
    q = SquareCubeQuery(args.N, args.target, args.power, args.n)
    c = classify(q)
    res = {"verdict": c.kind}
    if isinstance(c, Iff):
        res["condition"] = c.condition.describe()
    if args.alpha is not None:
        alpha = _param_for(args.N, args.alpha)
        res["holds"] = verdict_holds(c, family_param(args.N, alpha))
    params = {"N": args.N, "target": args.target, "power": args.power, "n": args.n, "alpha": args.alpha}
    return {"params": params, "result": res}, 0


def cmd_pell(args):
    sols = pell_solutions(args.D, args.count)
    return {"params": {"D": args.D, "count": args.count}, "result": [list(s) for s in sols]}, 0


def cmd_recover(args):
    curve, p, params = _curve_and_point(args)
    g2, g3 = ward_invariants(ward_data(curve, p))
    a, b = recover_curve(curve, p)
    if (a, b) != (curve.a4, curve.a6):
        raise ConsistencyError(f"recovered ({a}, {b}) differs from the input curve")
    return {"params": params, "result": {"g2": g2, "g3": g3, "a": a, "b": b}}, 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="edskit", description="Division-polynomial sequences on torsion families.")
    ap.add_argument("--version", action="version", version=f"edskit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--plain", action="store_true", help="suppress the metadata line on stderr")

    def point_args(p):
        p.add_argument("--curve", help="a1,a2,a3,a4,a6 (or a,b for y^2 = x^3 + ax + b)")
        p.add_argument("--point", help="x,y")
        p.add_argument("--tate", help="N:alpha, or N:p,q for N = 2, 3")

    p = sub.add_parser("seq", help="F, G, H arrays at a point")
    point_args(p)
    p.add_argument("--gamma", default="1")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    common(p)
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("closedform", help="evaluate a general-term table")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--alpha", required=True, help="alpha, or p,q for N = 2, 3")
    p.add_argument("--target", choices=["F", "G", "H"], default="G")
    p.add_argument("--n-min", type=int, default=0)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--printed", action="store_true", help="use the printed rows without errata")
    common(p)
    p.set_defaults(func=cmd_closedform)

    p = sub.add_parser("verify", help="compare tables and verdicts with the sequence oracle")
    p.add_argument("--N", type=int, default=None, help="one family (default: all)")
    p.add_argument("--what", choices=["closedform", "classify", "all"], default="closedform")
    p.add_argument("--alpha-bound", type=int, default=8)
    p.add_argument("--pair-bound", type=int, default=4)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="square/cube verdict for one term")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--target", choices=["G", "H"], required=True)
    p.add_argument("--power", choices=[SQUARE, CUBE], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", default=None)
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("pell", help="smallest solutions of x^2 - D y^2 = 1")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--count", type=int, default=3)
    common(p)
    p.set_defaults(func=cmd_pell)

    p = sub.add_parser("recover", help="rebuild y^2 = x^3 + ax + b from G1, G2, H1, H2")
    point_args(p)
    common(p)
    p.set_defaults(func=cmd_recover)
    return ap


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        payload, code = args.func(args)
    except ConsistencyError as exc:
        print(f"edskit: consistency failure: {exc}", file=stderr)
        return 1
    except ParameterError as exc:
        print(f"edskit: {exc}", file=stderr)
        return 2
    if not args.plain:
        stamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
        print(f"# edskit {__version__} {args.command} {stamp}", file=stderr)
    if isinstance(payload, str):
        stdout.write(payload)
    else:
        doc = {"schema_version": SCHEMA_VERSION, "command": args.command}
        doc["params"] = encode_params(payload["params"])
        doc["result"] = encode(payload["result"])
        stdout.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
