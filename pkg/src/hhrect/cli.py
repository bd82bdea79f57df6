"""Command-line client over the report builders.

Exit codes: 0 all requested checks passed, 1 a verified inequality or
identity failed, 2 usage/parse error, 3 runtime evaluation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from pydantic import ValidationError

from . import reports
from .expr import EvaluationError, ExpressionError
from .schemas import (BoundsRequest, ChainRequest, ConvexityRequest,
                      IdentityRequest, IntegrateRequest, QuadratureOptions,
                      RectModel, Report, SweepPRequest)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_RUNTIME = 3


def _parse_rect(text: str) -> RectModel:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("expected --rect a,b,c,d")
    try:
        a, b, c, d = (float(p) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad rectangle value: {exc}")
    return RectModel(a=a, b=b, c=c, d=d)


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(p) for p in text.split(",") if p]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad number list: {exc}")


def _parse_tiles(text: str) -> tuple[int, int]:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            m = int(parts[0])
            return m, m
        if len(parts) == 2:
            return int(parts[0]), int(parts[1])
    except ValueError:
        pass
    raise argparse.ArgumentTypeError("expected --tiles m,n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hhrect",
        description="Verify rectangle inequalities, identities, and "
                    "certified cubature for a two-variable function.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-f", "--function", required=True,
                        help="expression in x and y, e.g. 'x^2*y^2'")
    common.add_argument("--rect", type=_parse_rect, default=RectModel(),
                        metavar="a,b,c,d", help="domain (default 0,1,0,1)")
    common.add_argument("--panels", type=int, default=64,
                        help="quadrature panels per axis")
    common.add_argument("--nodes", type=int, default=8,
                        help="Gauss-Legendre nodes per panel")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("-o", "--output", default=None, metavar="PATH")
    common.add_argument("--format", choices=("json", "csv", "text"),
                        default="text")
    common.add_argument("--strict", action="store_true",
                        help="hypothesis-check failures also fail the run")

    p = sub.add_parser("chain", parents=[common],
                       help="five-link inequality chain")
    p.add_argument("--slack", type=float, default=1e-9)

    p = sub.add_parser("identity", parents=[common],
                       help="corner/integral identity vs kernel integral")
    p.add_argument("--tolerance", type=float, default=1e-8)

    p = sub.add_parser("bounds", parents=[common],
                       help="corner-derivative error bounds")
    p.add_argument("-p", "--p-list", type=_parse_floats, default=[2.0],
                   metavar="P1,P2,...")
    p.add_argument("--check-hypothesis", action="store_true")
    p.add_argument("--samples", type=int, default=2000)

    p = sub.add_parser("convexity", parents=[common],
                       help="sampling-based convexity checks")
    p.add_argument("--kind", choices=("coordinated", "partial", "hypothesis"),
                   default="coordinated")
    p.add_argument("-q", "--q", type=float, default=1.0,
                   help="exponent for the hypothesis field |f_xy|^q")
    p.add_argument("--lines", type=int, default=16)
    p.add_argument("--samples", type=int, default=10_000)

    p = sub.add_parser("integrate", parents=[common],
                       help="certified corrected-trapezoid cubature")
    p.add_argument("--tiles", type=_parse_tiles, default=(4, 4),
                   metavar="m,n")
    p.add_argument("--levels", type=int, default=None,
                   help="emit a convergence table at m=n=1,2,4,...")
    p.add_argument("--check-hypothesis", action="store_true")
    p.add_argument("--samples", type=int, default=500,
                   help="hypothesis samples per tile")

    p = sub.add_parser("sweep-p", parents=[common],
                       help="Holder vs power-mean bound over a p grid")
    p.add_argument("-p", "--p-list", type=_parse_floats,
                   default=[1.1, 1.5, 2.0, 3.0, 10.0], metavar="P1,P2,...")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


def _quadrature(args) -> QuadratureOptions:
    return QuadratureOptions(panels_1d=args.panels,
                             panels_2d_per_axis=args.panels,
                             nodes_per_panel=args.nodes)


def _build_report(args) -> Report:
    quad = _quadrature(args)
    if args.command == "chain":
        return reports.run_chain(ChainRequest(
            function=args.function, rect=args.rect, quadrature=quad,
            slack=args.slack))
    if args.command == "identity":
        return reports.run_identity(IdentityRequest(
            function=args.function, rect=args.rect, quadrature=quad,
            tolerance=args.tolerance))
    if args.command == "bounds":
        return reports.run_bounds(BoundsRequest(
            function=args.function, rect=args.rect, quadrature=quad,
            p_list=args.p_list, check_hypothesis=args.check_hypothesis,
            samples=args.samples, seed=args.seed))
    if args.command == "convexity":
        return reports.run_convexity(ConvexityRequest(
            function=args.function, rect=args.rect, quadrature=quad,
            kind=args.kind, q=args.q, samples=args.samples,
            lines=args.lines, seed=args.seed))
    if args.command == "integrate":
        m, n = args.tiles
        return reports.run_integrate(IntegrateRequest(
            function=args.function, rect=args.rect, quadrature=quad,
            m=m, n=n, levels=args.levels,
            check_hypothesis=args.check_hypothesis,
            samples_per_tile=args.samples, seed=args.seed))
    return reports.run_sweep_p(SweepPRequest(
        function=args.function, rect=args.rect, quadrature=quad,
        p_grid=args.p_list))


def _render_text(report: Report) -> str:
    lines = [f"command: {report.command}",
             f"function: {report.config['function']}"]
    rect = report.config["rect"]
    lines.append(f"rect: [{rect['a']},{rect['b']}]x[{rect['c']},{rect['d']}]")
    lines.append("results:")
    for key, value in report.results.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"  {key}:")
            for row in value:
                lines.append("    " + "  ".join(f"{k}={v!r}"
                                                for k, v in row.items()))
        else:
            lines.append(f"  {key}: {value!r}")
    if report.verdicts:
        lines.append("verdicts:")
        for v in report.verdicts:
            word = "PASS" if v.passed else "FAIL"
            lines.append(f"  [{word}] {v.name}: lhs={v.lhs!r} rhs={v.rhs!r}")
    return "\n".join(lines) + "\n"


def _render_csv(report: Report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    rows = report.results.get("rows")
    if report.command == "sweep-p" and rows:
        header = list(rows[0].keys())
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(row[k]) if isinstance(row[k], float)
                             else row[k] for k in header])
    else:
        writer.writerow(["name", "pass", "lhs", "rhs", "slack"])
        for v in report.verdicts:
            writer.writerow([v.name, v.passed, repr(v.lhs), repr(v.rhs),
                             repr(v.slack)])
    return buf.getvalue()


def _render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.model_dump(by_alias=True), indent=2) + "\n"
    if fmt == "csv":
        return _render_csv(report)
    return _render_text(report)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service import app
        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK

    try:
        report = _build_report(args)
    except EvaluationError as exc:
        print(f"evaluation error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except ExpressionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    text = _render(report, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)

    return EXIT_OK if report.all_pass(strict=args.strict) else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
