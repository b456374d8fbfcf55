"""Command line front end.

Exit codes: 0 success, 1 user error (bad arguments, inadmissible input,
malformed JSON), 2 internal invariant failure (a verification that should
never fail did).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .construct import (
    InvalidTripleError,
    RealizationError,
    realization_to_json,
    realize,
)
from .geom2d import (
    GeometryError,
    KernelError,
    mixed_volume_polarization,
    polygon_from_json,
    volume_polynomial,
)
from .quadform import QuadForm, ReductionError, reduce, reduction_to_json
from .report import run_sweep, write_report
from .svg import render_curves, render_pair
from .toric import FanError, realize_toric, toric_to_json
from .tropical import (
    LIFT_DENOMINATOR,
    LIFT_NUMERATOR_BOUND,
    RetryLimitError,
    curve_to_json,
    intersection_number,
    realize_tropical_full,
    self_intersection,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse exits with 2 by default; 2 is reserved for invariant failures
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _print_json(doc: dict):
    print(json.dumps(doc, indent=2))


def _write_svg(path: str, text: str):
    Path(path).write_text(text, encoding="utf-8")
    print(f"wrote {path}")


def _load_pair(path: str):
    raw = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    doc = json.loads(raw)
    if not isinstance(doc, dict) or "P" not in doc or "Q" not in doc:
        raise GeometryError('expected a JSON object with "P" and "Q" polygons')
    return polygon_from_json(doc["P"]), polygon_from_json(doc["Q"])


def _triple(args) -> tuple[int, int, int]:
    return args.A, args.B, args.C


def cmd_realize(args) -> int:
    result = realize(*_triple(args))
    if args.json:
        _print_json(realization_to_json(result))
    elif args.svg:
        _write_svg(args.svg, render_pair(result.P, result.Q))
    else:
        print(f"P = {list(result.P.vertices)}")
        print(f"Q = {list(result.Q.vertices)}")
        print(f"case = {result.case.value}")
        print(f"Vol2(P), V(P,Q), Vol2(Q) = {args.A}, {args.B}, {args.C}")
    return 0


def cmd_reduce(args) -> int:
    form = QuadForm(args.A, args.B, args.C)
    result = reduce(form)
    if args.json:
        _print_json(reduction_to_json(form, result))
    else:
        r = result.reduced
        (x1, y1), (x2, y2) = result.transform.columns()
        print(f"reduced: {r.a}*x^2 + {2 * r.b}*x*y - {r.c}*y^2")
        print(f"transform columns: ({x1},{y1}), ({x2},{y2})")
        print(f"swap applied: {result.swapped}; division steps: {list(result.steps)}")
    return 0


def cmd_mixedvol(args) -> int:
    P, Q = _load_pair(args.pair)
    value = mixed_volume_polarization(P, Q)
    if args.json:
        _print_json({"mixed_volume": value})
    else:
        print(value)
    return 0


def cmd_volpoly(args) -> int:
    P, Q = _load_pair(args.pair)
    triple = volume_polynomial(P, Q)
    if args.json:
        _print_json({"A": triple.A, "B": triple.B, "C": triple.C})
    else:
        print(f"Vol2(x*P + y*Q) = {triple.A}*x^2 + {2 * triple.B}*x*y + {triple.C}*y^2")
    return 0


def cmd_tropical(args) -> int:
    realization = realize_tropical_full(*_triple(args), seed=args.seed)
    cf, cg = realization.curve_f, realization.curve_g
    mutual = intersection_number(cf, cg)
    self_f = self_intersection(cf, seed=args.seed)
    self_g = self_intersection(cg, seed=args.seed)
    if args.json:
        _print_json({
            "curves": {"f": curve_to_json(cf), "g": curve_to_json(cg)},
            "intersection_number": mutual,
            "self_intersection": {"f": self_f, "g": self_g},
            "seed": args.seed,
            "attempts": realization.attempts,
            "lift_sampler": {
                "denominator": LIFT_DENOMINATOR,
                "numerator_bound": LIFT_NUMERATOR_BOUND,
            },
        })
    elif args.svg:
        _write_svg(args.svg, render_curves([cf, cg], clip_margin=args.clip))
    else:
        print(f"curve f: {len(cf.vertices)} vertices, {len(cf.edges)} edges, "
              f"{len(cf.rays)} rays, {len(cf.lines)} lines")
        print(f"curve g: {len(cg.vertices)} vertices, {len(cg.edges)} edges, "
              f"{len(cg.rays)} rays, {len(cg.lines)} lines")
        print(f"(f.f), (f.g), (g.g) = {self_f}, {mutual}, {self_g}")
    return 0


def cmd_toric(args) -> int:
    realization = realize_toric(*_triple(args), smooth=args.smooth)
    if args.json:
        _print_json(toric_to_json(realization))
    else:
        print(f"rays = {list(realization.fan.rays)}")
        print(f"D = {list(realization.D)}")
        print(f"E = {list(realization.E)}")
        print(f"intersection matrix = {realization.intersection_matrix()}")
    return 0


def cmd_sweep(args) -> int:
    report, rows = run_sweep(args.bound, parallel=args.parallel)
    if args.report_dir:
        for path in write_report(args.report_dir, report, rows):
            print(f"wrote {path}")
    if args.json:
        _print_json({
            "bound": report.bound,
            "checked": report.checked,
            "failures": [list(f) for f in report.failures],
            "wall_time": report.wall_time,
        })
    else:
        print(f"checked {report.checked} admissible triples with bound {report.bound} "
              f"in {report.wall_time:.2f}s")
        for A, B, C, reason in report.failures:
            print(f"FAILED ({A}, {B}, {C}): {reason}")
        if report.ok:
            print("all realizations verified")
    return 0 if report.ok else 2


def cmd_render(args) -> int:
    P, Q = _load_pair(args.pair)
    _write_svg(args.svg, render_pair(P, Q))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="volpoly",
                     description="realize quadratic forms as volume polynomials of "
                                 "lattice polygon pairs")
    sub = parser.add_subparsers(dest="command", required=True)

    def triple_command(name: str, help_text: str):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("A", type=int)
        p.add_argument("B", type=int)
        p.add_argument("C", type=int)
        return p

    p = triple_command("realize", "construct a verified polygon pair for A x^2 + 2B xy + C y^2")
    p.add_argument("--json", action="store_true")
    p.add_argument("--svg", metavar="PATH")
    p.set_defaults(func=cmd_realize)

    p = triple_command("reduce", "reduce a positive indefinite form; print the certificate")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("mixedvol", help="mixed volume of a polygon pair from JSON")
    p.add_argument("pair", help='path to {"P": ..., "Q": ...} JSON, or - for stdin')
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_mixedvol)

    p = sub.add_parser("volpoly", help="full volume polynomial of a polygon pair from JSON")
    p.add_argument("pair", help='path to {"P": ..., "Q": ...} JSON, or - for stdin')
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_volpoly)

    p = triple_command("tropical", "realize the triple by a transversal pair of tropical curves")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.add_argument("--svg", metavar="PATH")
    p.add_argument("--clip", type=int, default=3,
                   help="extra lattice units around the curves before rays are cut")
    p.set_defaults(func=cmd_tropical)

    p = triple_command("toric", "realize the triple as divisor intersection numbers on a fan")
    p.add_argument("--smooth", action="store_true",
                   help="refine the fan until every cone is unimodular")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_toric)

    p = sub.add_parser("sweep", help="realize and verify every admissible triple up to a bound")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--report-dir", metavar="DIR",
                   help="write sweep.csv and summary figures into DIR")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("render", help="draw a polygon pair from JSON into an SVG file")
    p.add_argument("pair", help='path to {"P": ..., "Q": ...} JSON, or - for stdin')
    p.add_argument("--svg", metavar="PATH", required=True)
    p.set_defaults(func=cmd_render)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse handles --help (status 0) and usage errors (status 1 via
        # the override above) by exiting; report the status instead
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return args.func(args)
    except (KernelError, RealizationError, RetryLimitError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except (InvalidTripleError, ReductionError, FanError, GeometryError,
            json.JSONDecodeError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
