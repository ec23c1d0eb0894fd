"""Command-line interface for npstrata."""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, List, Optional

from . import __version__
from .config import configure_logging, default_axiom_path
from .core import (
    StratumMetrics,
    codim_ag,
    dim_ag,
    enumerate_polygons,
    format_polygon,
    parse_polygon,
)
from .engine import closure, fact_to_dict, facttable_to_json, save_facttable
from .errors import NpStrataError
from .knowledge import (
    AllPrimesQuery,
    ConcretePrime,
    axioms_document,
    builtin_axioms,
    load_axioms,
    save_axioms,
)
from .oracle import run_selfcheck
from .reports import TARGETS, build_report

logger = logging.getLogger(__name__)


def _emit(args: argparse.Namespace, text: str, data: Any) -> None:
    if args.json:
        print(json.dumps(data, indent=2, ensure_ascii=False))
    else:
        print(text)


def _axioms(args: argparse.Namespace):
    path = args.axioms or default_axiom_path()
    if path is None:
        return builtin_axioms()
    return load_axioms(path)


def _query(args: argparse.Namespace):
    return AllPrimesQuery() if args.all_primes else ConcretePrime(args.prime)


def _polygon(args: argparse.Namespace, parser: argparse.ArgumentParser):
    xi = parse_polygon(args.poly)
    if args.g is not None and args.g != xi.genus:
        parser.error(
            f"--g {args.g} does not match {format_polygon(xi)}, which has genus {xi.genus}"
        )
    return xi


def cmd_enum(args: argparse.Namespace) -> int:
    polygons = enumerate_polygons(args.g)
    lines = [f"genus {args.g}: {len(polygons)} symmetric Newton polygons"]
    lines.extend(f"  {xi}  (p-rank {xi.p_rank})" for xi in polygons)
    data = {
        "g": args.g,
        "count": len(polygons),
        "polygons": [
            {"polygon": str(xi), "factors": xi.to_list(), "p_rank": xi.p_rank} for xi in polygons
        ],
    }
    _emit(args, "\n".join(lines), data)
    return 0


def cmd_codim(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    xi = _polygon(args, parser)
    g = xi.genus
    heights = ", ".join(str(xi.height_at(x)) for x in range(1, g + 1))
    text = "\n".join(
        [
            f"polygon: {xi} (g={g}, p-rank {xi.p_rank})",
            f"heights at x = 1..{g}: {heights}",
            f"codim_Ag = {codim_ag(xi)}  (lattice points 1 <= x <= {g}, 0 <= y < height)",
            f"dim A_g[xi] = {dim_ag(g)} - {codim_ag(xi)} = {dim_ag(g) - codim_ag(xi)}",
        ]
    )
    _emit(args, text, {"polygon": str(xi), **StratumMetrics.for_polygon(xi).to_dict()})
    return 0


def cmd_edim(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    xi = _polygon(args, parser)
    metrics = StratumMetrics.for_polygon(xi)
    g = xi.genus
    if g == 1 and xi.p_rank == 1:
        formula = "e_dim = 1 (ordinary elliptic curves)"
    else:
        formula = (
            f"e_dim = max(0, 3g-3 - codim_Ag) = "
            f"max(0, {3 * g - 3} - {metrics.codim_ag}) = {metrics.e_dim}"
        )
    lines = [
        f"polygon: {xi} (g={g}, p-rank {xi.p_rank})",
        f"codim_Ag = {metrics.codim_ag}",
        formula,
    ]
    if metrics.prank_stratum_dim is not None:
        lines.append(f"p-rank stratum dimension 2g-3+f = {metrics.prank_stratum_dim}")
    _emit(args, "\n".join(lines), {"polygon": str(xi), **metrics.to_dict()})
    return 0


def cmd_occurs(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    xi = _polygon(args, parser)
    table = closure(xi.genus, _query(args), _axioms(args), args.disable_axiom, jobs=args.jobs)
    state = table.query(xi)
    if args.trace:
        text = table.render_trace(xi)
    else:
        lines = [f"{table.key_for(xi)}: {state.summary()}"]
        for blocker in state.blockers:
            lines.extend(f"  {line}" for line in blocker.render().splitlines())
        text = "\n".join(lines)
    data = fact_to_dict(table.key_for(xi), state)
    data["context"] = table.context.to_dict()
    if args.trace:
        data["rendered_trace"] = text
    _emit(args, text, data)
    return 0


def cmd_closure(args: argparse.Namespace) -> int:
    table = closure(args.gmax, _query(args), _axioms(args), args.disable_axiom, jobs=args.jobs)
    if not args.out:
        print(facttable_to_json(table), end="")
        return 0
    path = save_facttable(table, args.out)
    occurring = sum(1 for _, state in table.items() if state.occurs)
    _emit(
        args,
        f"Wrote {len(table)} facts ({occurring} occur) to {path}",
        {"out": str(path), "total_facts": len(table), "occurring": occurring},
    )
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    report = build_report(
        args.target, args.gmax, _query(args), _axioms(args), args.disable_axiom, args.jobs
    )
    _emit(args, report.render(), report.to_dict())
    return 0 if report.passed else 1


def cmd_selfcheck(args: argparse.Namespace) -> int:
    report = run_selfcheck()
    lines = [
        f"{'ok  ' if r.passed else 'FAIL'}  {r.name}  {r.detail}".rstrip() for r in report.results
    ]
    _emit(args, "\n".join(lines), report.to_dict())
    return 0 if report.passed else 1


def cmd_axioms(args: argparse.Namespace) -> int:
    if args.validate:
        axioms = load_axioms(args.validate)
        _emit(
            args,
            f"{args.validate}: {len(axioms)} axioms, no problems",
            {"file": str(args.validate), "axioms": len(axioms), "valid": True},
        )
        return 0
    axioms = _axioms(args)
    if args.out:
        path = save_axioms(axioms, args.out)
        _emit(args, f"Saved {len(axioms)} axioms to {path}", {"out": str(path)})
        return 0
    lines = []
    for axiom in axioms:
        polygons = ", ".join(str(xi) for xi in axiom.polygons)
        flags = []
        if axiom.pad_ord:
            flags.append(f"padded with ord for g >= {axiom.g}")
        if axiom.redundant:
            flags.append("redundant")
        if axiom.id in args.disable_axiom:
            flags.append("disabled")
        suffix = f" [{'; '.join(flags)}]" if flags else ""
        lines.append(
            f"{axiom.id:4} {axiom.kind.value} g={axiom.g}: {polygons} "
            f"({axiom.prime_condition.render()}){suffix}"
        )
        lines.append(f"     {axiom.citation}")
    _emit(args, "\n".join(lines), axioms_document(axioms))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--axioms", type=Path, help="Axiom file (default: $NPSTRATA_AXIOMS or builtin)"
    )
    common.add_argument(
        "--disable-axiom", action="append", default=[], metavar="ID", help="Leave out an axiom"
    )
    common.add_argument("--json", action="store_true", help="Structured output")
    common.add_argument("--jobs", type=int, default=1, help="Worker threads for the closure")
    common.add_argument("-v", "--verbose", action="count", default=0, help="More logging")

    def prime_mode(sub: argparse.ArgumentParser) -> None:
        group = sub.add_mutually_exclusive_group(required=True)
        group.add_argument("--prime", type=int, metavar="P", help="Work in characteristic P")
        group.add_argument("--all-primes", action="store_true", help="Claims valid for every p")

    parser = argparse.ArgumentParser(
        prog="npstrata", description="Symmetric Newton polygons and their strata on M_g"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    enum_parser = subparsers.add_parser("enum", parents=[common], help="List polygons of genus g")
    enum_parser.add_argument("--g", type=int, required=True)

    for name, help_text in (("codim", "Codimension in A_g"), ("edim", "Expected dimension in M_g")):
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("--poly", required=True, help='Polygon expression, e.g. "ord^2+nu3"')
        sub.add_argument("--g", type=int, help="Must match the polygon's genus")

    occurs_parser = subparsers.add_parser("occurs", parents=[common], help="Does a polygon occur?")
    occurs_parser.add_argument("--poly", required=True)
    occurs_parser.add_argument("--g", type=int, help="Must match the polygon's genus")
    occurs_parser.add_argument("--trace", action="store_true", help="Show the proof tree")
    prime_mode(occurs_parser)

    closure_parser = subparsers.add_parser("closure", parents=[common], help="Write a FactTable")
    closure_parser.add_argument("--gmax", type=int, required=True)
    closure_parser.add_argument("--out", type=Path, help="Output file (default: stdout)")
    prime_mode(closure_parser)

    report_parser = subparsers.add_parser("report", parents=[common], help="Check published claims")
    report_parser.add_argument("--target", required=True, choices=sorted(TARGETS))
    report_parser.add_argument("--gmax", type=int, help="Largest genus (default per target)")
    prime_mode(report_parser)

    subparsers.add_parser("selfcheck", parents=[common], help="Run oracle equivalence checks")

    axioms_parser = subparsers.add_parser("axioms", parents=[common], help="List or check axioms")
    axioms_parser.add_argument(
        "--validate", type=Path, metavar="FILE", help="Validate an axiom file"
    )
    axioms_parser.add_argument("--out", type=Path, help="Save the axiom base as JSON")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return 2

    configure_logging(args.verbose)
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")

    try:
        if args.command == "enum":
            return cmd_enum(args)
        if args.command == "codim":
            return cmd_codim(args, parser)
        if args.command == "edim":
            return cmd_edim(args, parser)
        if args.command == "occurs":
            return cmd_occurs(args, parser)
        if args.command == "closure":
            return cmd_closure(args)
        if args.command == "report":
            return cmd_report(args)
        if args.command == "selfcheck":
            return cmd_selfcheck(args)
        return cmd_axioms(args)
    except NpStrataError as e:
        logger.debug("Command %s failed", args.command, exc_info=True)
        if args.json:
            print(json.dumps(e.to_dict(), ensure_ascii=False), file=sys.stderr)
        else:
            print(f"Error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
