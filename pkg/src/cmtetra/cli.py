"""Command-line front end: verify, eval, point, descend, heron, classify, search.

Exit codes: 0 success, 1 a verification failed, 2 malformed input (one-line
diagnostic on stderr, nothing on stdout). Rationals are read and written as
"p" or "p/q" strings, never floats.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from .algebra import format_rational, is_perfect_square_rational, parse_rational
from .cayley_menger import EdgeTuple, ankum_shift, heron_eval, realizability
from .points import (
    CMPoint,
    DegenerateTriangle,
    PointAtInfinity,
    ParallelSlope,
    VerificationError,
    classify_faces,
    conic_descent,
    gaussian_point,
    heron_point,
    random_weddle_inputs,
    weddle_point,
)
from .search import OracleMismatch, SearchOptions, search_integer_tetrahedra, to_csv, to_json, to_text
from .tetrahedroid import DegenerateParameters
from .verdict import FAIL
from .verify import run_verify_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Malformed input; reported on one line with exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would print the whole usage block
        raise UsageError(message)


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _seed(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer: {text!r}") from None
    if not 0 <= n < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return n


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer: {text!r}")
    return n


def _point4(text: str) -> List[Fraction]:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"--x takes four comma-separated rationals, got {text!r}")
    return [_rational(p) for p in parts]


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"))
    common.add_argument("--seed", type=_seed, default=0)

    ap = _Parser(prog="cmtetra", description="Exact Cayley-Menger and tetrahedroid toolkit.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", parents=[common], help="run identity verification suites")
    p.add_argument("--suite", choices=("cm", "tetrahedroid", "weddle", "points", "all"), default="all")

    p = sub.add_parser("eval", parents=[common], help="evaluate CM, H or the shift quadratic")
    p.add_argument("quantity", choices=("cm", "heron", "shift"))
    p.add_argument("values", nargs="*", type=_rational)
    p.add_argument("--edges", nargs=6, type=_rational)

    p = sub.add_parser("point", parents=[common], help="points on y^2 = -CM (or CM over Q(i))")
    p.add_argument("--a", type=_rational, default=Fraction(3))
    p.add_argument("--b", type=_rational, default=Fraction(4))
    p.add_argument("--c", type=_rational, default=Fraction(5))
    p.add_argument("--x", type=_point4, help="X1,X2,X3,X4; omitted: --count seeded random inputs")
    p.add_argument("--count", type=_positive, default=1)
    p.add_argument("--gaussian", action="store_true", help="return i*y on y^2 = CM over Q(i)")

    p = sub.add_parser("descend", parents=[common], help="conic descent from a point with CM a square")
    p.add_argument("--edges", nargs=6, type=_rational, help="seed edges (default 1 2 3 1 2 1)")
    p.add_argument("--t", type=_rational, help="slope; omitted: slopes 1..--count")
    p.add_argument("--count", type=_positive, default=1)

    p = sub.add_parser("heron", parents=[common], help="rational Heron triangles from (V, t)")
    p.add_argument("V", nargs="?", type=_rational)
    p.add_argument("--t", type=_rational)
    p.add_argument("--count", type=_positive, default=1)

    p = sub.add_parser("classify", parents=[common], help="square classes of the four face H values")
    p.add_argument("values", nargs="*", type=_rational)
    p.add_argument("--edges", nargs=6, type=_rational)

    p = sub.add_parser("search", parents=[common], help="integer tuples with CM a perfect square")
    p.add_argument("--max-edge", type=_positive, required=True)
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--include-degenerate", action="store_true")
    p.add_argument("--canonical", action="store_true")
    p.add_argument("--output", "-o", help="write to this file instead of stdout")
    return ap


def _edges(args) -> EdgeTuple:
    vals = args.edges if args.edges is not None else args.values
    if args.edges is not None and args.values:
        raise UsageError("give the six edges either positionally or with --edges, not both")
    if len(vals) != 6:
        raise UsageError(f"expected 6 edge lengths, got {len(vals)}")
    return EdgeTuple.of(vals)


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


def _points_out(points: Sequence[CMPoint], fmt: str) -> str:
    if fmt == "json":
        data = [p.as_json() for p in points]
        return _dump(data[0] if len(data) == 1 else data)
    if fmt == "csv":
        lines = ["d12,d13,d14,d23,d24,d34,y,sign"]
        lines += [",".join(p.as_json()["edges"] + [p.as_json()["y"], str(p.sign)]) for p in points]
        return "\n".join(lines) + "\n"
    return "".join(f"{' '.join(p.as_json()['edges'])}  y={p.as_json()['y']}  sign={p.sign:+d}\n" for p in points)


def cmd_verify(args) -> tuple:
    verdicts = run_verify_suite(args.suite, args.seed)
    failed = any(v.status == FAIL for v in verdicts)
    fmt = args.format or "text"
    if fmt == "json":
        out = _dump({"suite": args.suite, "seed": args.seed,
                     "verdicts": [v.as_json() for v in verdicts],
                     "failures": sum(v.status == FAIL for v in verdicts)})
    elif fmt == "csv":
        lines = ["check,status,residual_terms,elapsed_ms"]
        lines += [f"{v.check},{v.status},{v.residual_terms},{v.elapsed_ms}" for v in verdicts]
        out = "\n".join(lines) + "\n"
    else:
        lines = [f"{v.status:<9} {v.check:<34} {v.residual_terms:>4} {v.elapsed_ms:>6} ms  {v.notes}" for v in verdicts]
        counts = {s: sum(v.status == s for v in verdicts) for s in ("pass", "corrected", "fail")}
        lines.append(f"{len(verdicts)} checks: {counts['pass']} pass, {counts['corrected']} corrected, "
                     f"{counts['fail']} fail")
        out = "\n".join(lines) + "\n"
    return (EXIT_FAIL if failed else EXIT_OK), out


def cmd_eval(args) -> tuple:
    if args.quantity == "heron":
        vals = args.values
        if args.edges is not None or len(vals) != 3:
            raise UsageError("eval heron takes three side lengths")
        h = heron_eval(*vals)
        root = is_perfect_square_rational(h)
        data = {"heron": format_rational(h),
                "area": None if root is None or h < 0 else format_rational(root / 4)}
    elif args.quantity == "cm":
        rep = realizability(_edges(args))
        data = {"cm": format_rational(rep.cm_value), "realizable": rep.realizable,
                "volume": None if rep.volume is None or not (rep.realizable or rep.degenerate)
                else format_rational(rep.volume)}
    else:
        sq = ankum_shift(tuple(_edges(args)))
        data = {"alpha": format_rational(sq.alpha), "beta": format_rational(sq.beta),
                "gamma": format_rational(sq.gamma), "A": format_rational(sq.A), "B": format_rational(sq.B)}
    if (args.format or "json") == "json":
        return EXIT_OK, _dump(data)
    return EXIT_OK, "".join(f"{k}={'null' if v is None else v}\n" for k, v in data.items())


def cmd_point(args) -> tuple:
    make = gaussian_point if args.gaussian else weddle_point
    if args.x is not None:
        pts = [make(args.a, args.b, args.c, args.x)]
    else:
        rng = random.Random(args.seed)
        pts = [make(*random_weddle_inputs(rng)) for _ in range(args.count)]
    return EXIT_OK, _points_out(pts, args.format or "json")


def cmd_descend(args) -> tuple:
    edges = EdgeTuple.of(args.edges) if args.edges is not None else EdgeTuple(1, 2, 3, 1, 2, 1)
    rep = realizability(edges)
    y = is_perfect_square_rational(rep.cm_value)
    if y is None:
        raise UsageError(f"CM = {format_rational(rep.cm_value)} is not a rational square; no seed point")
    seed = CMPoint(edges, y, 1).verify()
    slopes = [args.t] if args.t is not None else [Fraction(k) for k in range(1, args.count + 1)]
    pts = [conic_descent(seed, t) for t in slopes]
    return EXIT_OK, _points_out(pts, args.format or "json")


def cmd_heron(args) -> tuple:
    if args.V is not None:
        if args.t is None:
            raise UsageError("heron V needs --t")
        pts = [heron_point(args.V, args.t)]
    else:
        rng = random.Random(args.seed)
        pts = []
        while len(pts) < args.count:
            V = Fraction(rng.randint(1, 99), rng.randint(1, 99))
            t = Fraction(rng.randint(-99, 99), rng.randint(1, 99))
            try:
                pts.append(heron_point(V, t))
            except DegenerateTriangle:
                continue
    fmt = args.format or "json"
    if fmt == "json":
        data = [p.as_json() for p in pts]
        return EXIT_OK, _dump(data[0] if len(data) == 1 else data)
    keys = ("U", "V", "Z", "a", "b", "c", "Y")
    if fmt == "csv":
        return EXIT_OK, ",".join(keys) + "\n" + "".join(",".join(p.as_json()[k] for k in keys) + "\n" for p in pts)
    return EXIT_OK, "".join(" ".join(f"{k}={p.as_json()[k]}" for k in keys) + "\n" for p in pts)


def cmd_classify(args) -> tuple:
    report = classify_faces(_edges(args))
    data = report.as_json()
    if (args.format or "json") == "json":
        return EXIT_OK, _dump(data)
    lines = [f"cm={data['cm']}"]
    lines += [f"H{f}={h} class={data['classes'][f]}" for f, h in data["heron"].items()]
    lines += [f"{k}: equal={data['equal'][k]} norm={data['norm_ratio'][k]}" for k in data["equal"]]
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_search(args) -> tuple:
    opts = SearchOptions(include_degenerate=args.include_degenerate, canonical=args.canonical, jobs=args.jobs)
    hits = search_integer_tetrahedra(args.max_edge, opts)
    fmt = args.format or "csv"
    out = {"csv": to_csv, "json": to_json, "text": to_text}[fmt](hits)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(out)
        out = ""
    return EXIT_OK, out


COMMANDS = {
    "verify": cmd_verify, "eval": cmd_eval, "point": cmd_point, "descend": cmd_descend,
    "heron": cmd_heron, "classify": cmd_classify, "search": cmd_search,
}

# domain errors that mean "these inputs are not valid for this operation"
_INPUT_ERRORS = (UsageError, ValueError, ZeroDivisionError, PointAtInfinity, ParallelSlope,
                 DegenerateTriangle, DegenerateParameters)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        code, out = COMMANDS[args.command](args)
    except (VerificationError, OracleMismatch) as e:
        print(f"cmtetra: verification failed: {e}", file=sys.stderr)
        return EXIT_FAIL
    except _INPUT_ERRORS as e:
        print(f"cmtetra: error: {str(e).splitlines()[0] if str(e) else type(e).__name__}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
