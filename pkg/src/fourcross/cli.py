"""Command line entry point: ``fourcross <command> ...``.

Exit status: 0 when the command succeeds and whatever it checks holds,
1 when a check fails, 2 for unusable input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from decimal import Decimal
from fractions import Fraction
from pathlib import Path

from . import albertson, bounds
from .construct import cylinder
from .discharge import DischargeError, run_discharging
from .mapcore import MapError, parse_map, validate

OK, FAILED, BAD_INPUT = 0, 1, 2
PRECISION_ENV = "FOURCROSS_PRECISION"


class InputError(Exception):
    pass


def precision() -> int:
    raw = os.environ.get(PRECISION_ENV, "10")
    try:
        digits = int(raw)
    except ValueError:
        raise InputError(f"{PRECISION_ENV} must be an integer, got {raw!r}")
    if not 1 <= digits <= 17:
        raise InputError(f"{PRECISION_ENV} must be between 1 and 17")
    return digits


def real(x: float) -> float:
    """Round a real-valued result to the configured significant digits."""
    return float(f"{float(x):.{precision()}g}")


def _jsonable(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, Decimal):
        return str(x)
    raise TypeError(type(x))


def dump(obj) -> str:
    return json.dumps(obj, indent=2, default=_jsonable) + "\n"


def read_map(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise InputError(f"cannot read {path}: {e.strerror}")
    try:
        return parse_map(text)
    except MapError as e:
        raise InputError(f"{path}: {e}")


# ---------------------------------------------------------------------------
# map commands


def cmd_validate(args) -> int:
    pmap = read_map(args.file)
    report = validate(pmap, args.k)
    if args.json:
        sys.stdout.write(dump(report.as_dict()))
    else:
        print(f"n={report.n} m={report.m} max crossings/edge={report.max_crossings_per_edge} "
              f"min degree={report.min_degree}")
        print(f"2-connected={report.two_connected} simple={report.simple} euler={report.euler_ok}")
        print("assumption flags: " + (", ".join(report.assumption_flags) or "none"))
        for note in report.notes:
            print(f"note: {note}")
    if args.strict and report.assumption_flags:
        return FAILED
    return OK


def cmd_discharge(args) -> int:
    pmap = read_map(args.file)
    strict = not args.permissive
    if strict:
        flags = validate(pmap, args.k).assumption_flags
        if flags:
            raise InputError(f"input violates {', '.join(flags)}; "
                             "rerun with --permissive to discharge anyway")
    try:
        report = run_discharging(pmap, strict=strict, k_max=args.k)
    except DischargeError as e:
        print(f"discharging aborted: {e}", file=sys.stderr)
        return FAILED
    if args.ledger:
        Path(args.ledger).write_text(report.to_json(), encoding="utf-8")
    if args.json:
        sys.stdout.write(report.to_json())
    else:
        for v in report.assertion_violations:
            print(f"violation (step {v.step}, {v.kind}): {v.detail}")
        negative = [f.id for f in report.faces if report.final.face_charge[f.id] < 0]
        if negative:
            print(f"faces with negative final charge: {negative}")
        print(report.certificate)
    return OK if report.certificate.holds else FAILED


def cmd_construct(args) -> int:
    if args.layers < 2:
        raise InputError(f"--layers must be at least 2, got {args.layers}")
    doc = cylinder(args.layers)
    if args.output and args.output != "-":
        Path(args.output).write_text(doc, encoding="utf-8")
    else:
        sys.stdout.write(doc)
    return OK


# ---------------------------------------------------------------------------
# bounds


def cmd_bounds(args) -> int:
    try:
        report = bounds.bound_report(args.n, args.m, args.multiplicity, args.k)
    except ValueError as e:
        raise InputError(str(e))
    fmt = "json" if args.json else args.format
    if fmt == "json":
        sys.stdout.write(dump(report.as_dict(real)))
        return OK
    rows = [(f"({k}) {bounds.LINEAR_TEXT[k]}", _q(v)) for k, v in report.per_formula.items()]
    rows.append(("best linear", f"{_q(report.best_linear)} (formula {report.best_formula})"))
    rows.append((f"crossing lemma [{report.crossing_lemma_branch}]", f"{real(report.crossing_lemma)}"))
    if report.multigraph is not None:
        rows.append((f"multigraph, t={report.multiplicity}", f"{real(report.multigraph)}"))
    if report.edge_bound is not None:
        eb = report.edge_bound
        value = _q(eb.value) if isinstance(eb.value, Fraction) else real(eb.value)
        rows.append((f"max edges, k={report.k}", f"{value} via {eb.source}"))
    if fmt == "markdown":
        print(f"n = {report.n}, m = {report.m}\n")
        print("| bound | value |\n|---|---|")
        for name, value in rows:
            print(f"| {name} | {value} |")
    else:
        width = max(len(name) for name, _ in rows)
        for name, value in rows:
            print(f"{name:<{width}}  {value}")
    for note in report.notes:
        print(f"note: {note}")
    return OK


def _q(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# albertson


def cmd_table(args) -> int:
    try:
        rows = albertson.table(args.r, args.n_from, args.n_to)
    except ValueError as e:
        raise InputError(str(e))
    if args.json:
        sys.stdout.write(dump({"r": args.r, "z": albertson.zarankiewicz(args.r),
                               "rows": [vars(row) for row in rows]}))
    else:
        sys.stdout.write(albertson.table_markdown(args.r, rows))
    return OK


def cmd_threshold(args) -> int:
    try:
        th = albertson.threshold(args.r)
    except ValueError as e:
        raise InputError(str(e))
    a, b = th.linear_coeffs
    if args.json:
        sys.stdout.write(dump({"r": th.r, "p": real(th.p_star), "n": real(th.n_star),
                               "rounded_p": th.rounded_p, "a": real(a), "b": real(b),
                               "n_from": th.n_from}))
    else:
        print(f"p = {real(th.p_star)}, n = {real(th.n_star)}")
        print(f"at p = {th.rounded_p}: bound >= {real(a)}*n + {real(b)}")
        print(f"reaches Z({th.r}) = {albertson.zarankiewicz(th.r)} for n >= {th.n_from}")
    return OK


def cmd_join(args) -> int:
    try:
        cases = albertson.join_cases(args.r, args.n)
    except ValueError as e:
        raise InputError(str(e))
    m = min(c.m for c in cases)
    bound = albertson.cr_detailed(args.n, m, albertson.JOIN_P)
    ceiling = -(-bound.numerator // bound.denominator)
    z = albertson.zarankiewicz(args.r)
    if args.json:
        sys.stdout.write(dump({"r": args.r, "n": args.n, "min_edges": m, "p": albertson.JOIN_P,
                               "bound": ceiling, "z": z,
                               "cases": [vars(c) for c in cases]}))
    else:
        print(f"m >= {m} over {len(cases)} splits")
        print(f"cr >= ⌈X({args.n},{m},{albertson.JOIN_P})⌉ = {ceiling} vs Z({args.r}) = {z}")
    return OK if ceiling >= z else FAILED


def cmd_counterexample(args) -> int:
    try:
        rep = albertson.counterexample_check(args.r)
    except ValueError as e:
        raise InputError(str(e))
    if args.json:
        sys.stdout.write(dump({
            "r": rep.r, "ok": rep.ok, "quartic": rep.quartic, "z": rep.z,
            "ranges": [{"alpha": [rc.lo, rc.hi], "k": rc.k, "points": rc.points,
                        "min_h": real(rc.min_h), "min_coefficient": real(rc.min_coefficient),
                        "witness": rc.witness} for rc in rep.ranges],
        }))
    else:
        for rc in rep.ranges:
            status = "ok" if rc.ok else f"fails at alpha={float(rc.witness)}"
            print(f"alpha in [{float(rc.lo)}, {float(rc.hi)}], k={rc.k}: {rc.points} points, "
                  f"min h={real(rc.min_h)}, min coefficient={real(rc.min_coefficient)}: {status}")
        print(f"r(r-1)(r-2)(r-3)/64 = {real(rep.quartic)} vs Z({rep.r}) = {rep.z}")
        print("n >= 3.03r settled" if rep.ok else "check FAILED")
    return OK if rep.ok else FAILED


def cmd_verify(args) -> int:
    try:
        v = albertson.verify(args.r)
    except ValueError as e:
        raise InputError(str(e))
    if args.json:
        sys.stdout.write(dump({
            "r": v.r, "z": v.z, "categories": {str(n): c for n, c in v.categories.items()},
            "tail_from": v.tail_from, "tail": v.tail, "exceptions": v.exceptions,
            "join_min_edges": v.join_m, "join_bound": v.join_bound,
        }))
    else:
        spans: list[tuple[str, int, int]] = []
        for n, c in v.categories.items():
            if spans and spans[-1][0] == c and spans[-1][2] == n - 1:
                spans[-1] = (c, spans[-1][1], n)
            else:
                spans.append((c, n, n))
        for c, lo, hi in spans:
            print(f"n = {lo}" + (f"..{hi}" if hi > lo else "") + f": {c}")
        print(f"n >= {v.tail_from}: {v.tail}")
        print("exceptions: " + (", ".join(map(str, v.exceptions)) or "none"))
    return OK if v.verified else FAILED


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fourcross",
                                     description="Drawings with at most four crossings per edge.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a map against the 6n-12 preconditions")
    p.add_argument("file", help="map file, or - for standard input")
    p.add_argument("--k", type=int, default=4, help="crossings allowed per edge (default 4)")
    p.add_argument("--strict", action="store_true", help="exit 1 if any precondition fails")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("discharge", help="run the discharging procedure on a map")
    p.add_argument("file", help="map file, or - for standard input")
    p.add_argument("--ledger", metavar="OUT", help="write the charge ledger as JSON")
    p.add_argument("--permissive", action="store_true",
                   help="record failed structural checks instead of aborting")
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_discharge)

    p = sub.add_parser("construct", help="generate a construction")
    csub = p.add_subparsers(dest="construction", required=True)
    c = csub.add_parser("cylinder", help="hexagons on a cylinder, 6n-18 edges")
    c.add_argument("--layers", type=int, required=True)
    c.add_argument("-o", "--output", help="output path (default standard output)")
    c.set_defaults(func=cmd_construct)

    p = sub.add_parser("bounds", help="evaluate crossing-number and edge bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--multiplicity", type=int, metavar="T")
    p.add_argument("--k", type=int)
    p.add_argument("--format", choices=("json", "markdown", "text"), default="json")
    p.add_argument("--json", action="store_true", help="same as --format json")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("albertson", help="Albertson conjecture computations")
    asub = p.add_subparsers(dest="task", required=True)
    a = asub.add_parser("table")
    a.add_argument("--r", type=int, required=True)
    a.add_argument("--n-from", type=int, required=True)
    a.add_argument("--n-to", type=int, required=True)
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_table)
    a = asub.add_parser("threshold")
    a.add_argument("--r", type=int, required=True)
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_threshold)
    a = asub.add_parser("join")
    a.add_argument("--r", type=int, required=True)
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_join)
    a = asub.add_parser("check-counterexample")
    a.add_argument("--r", type=int, required=True)
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_counterexample)
    a = asub.add_parser("verify")
    a.add_argument("--r", type=int, required=True)
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"fourcross: error: {e}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
