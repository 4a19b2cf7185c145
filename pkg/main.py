# main.py
import argparse
import asyncio
import sys
import time
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Setup Logger
from utils.logger import get_logger
logger = get_logger("main_cli")

from hochschild.complexes import VARIANTS
from operad.l_complex import CONVENTIONS as SHIFT_CONVENTIONS
from schemas.report import RunReport
from services import report_orchestrator as reports
from utils.config import get_settings
from utils.exceptions import WorkbenchError

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_FAILED = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on its own; we want the message routed through run()."""

    def error(self, message):
        raise argparse.ArgumentError(None, message)


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = _Parser(prog="workbench", description="Exact homology computations for operads, Lie and associative algebras.")
    parser.add_argument("--json", action="store_true", help="emit the report as JSON")
    parser.add_argument("--timing", action="store_true", help="include wall time (output is then not reproducible)")
    parser.add_argument("--threads", type=int, default=settings.threads, help=f"worker threads (default {settings.threads})")
    parser.add_argument("--max-arity", type=int, default=settings.max_arity, help=f"largest tree arity (default {settings.max_arity})")
    parser.add_argument("--max-basis", type=int, default=settings.max_basis, help=f"largest basis (default {settings.max_basis})")
    parser.add_argument("--max-degree-limit", type=int, default=settings.max_degree,
                        help=f"largest Hochschild/trace degree (default {settings.max_degree})")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    trees = groups.add_parser("trees").add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = trees.add_parser("enumerate")
    p.add_argument("leaves", nargs="+")
    p.add_argument("--edges", type=int, required=True)
    p = trees.add_parser("compose")
    p.add_argument("left")
    p.add_argument("label")
    p.add_argument("right")

    loperad = groups.add_parser("loperad").add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("build", "homology"):
        p = loperad.add_parser(name)
        p.add_argument("--arity", type=int, required=True)
        p.add_argument("--oracle", action="store_true", help="cross-check against the dense rank oracle")
    p.add_argument("--n", type=int, default=None, help="also report the component shifted for dimension n")
    p.add_argument("--convention", choices=SHIFT_CONVENTIONS, default="section")

    fm = groups.add_parser("fm").add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = fm.add_parser("strata")
    p.add_argument("leaves", nargs="+")
    p.add_argument("--n", type=int, required=True)
    p = fm.add_parser("incidence")
    p.add_argument("tree")
    p.add_argument("other")

    ce = groups.add_parser("ce").add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = ce.add_parser("homology")
    p.add_argument("--lie", type=Path, required=True)
    p.add_argument("--cutoff", type=int, required=True)

    hh = groups.add_parser("hochschild").add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = hh.add_parser("homology")
    p.add_argument("--algebra", type=Path, required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--variant", choices=VARIANTS, default="standard")

    trace = groups.add_parser("trace").add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("certify", "induced"):
        p = trace.add_parser(name)
        p.add_argument("--algebra", type=Path, required=True)
        p.add_argument("--max-degree", type=int, required=True)
        p.add_argument("--variant", choices=VARIANTS, default="standard")

    weyl = groups.add_parser("weyl").add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = weyl.add_parser("verify")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--v", type=Path, required=True)
    p.add_argument("--manifold", type=Path, required=True)
    p.add_argument("--cutoff", type=int, default=None, help="force the polynomial-cutoff regime")
    return parser


def dispatch(args: argparse.Namespace) -> RunReport:
    key = (args.group, args.command)
    if key == ("trees", "enumerate"):
        return reports.trees_enumerate(args.leaves, args.edges, args.max_arity)
    if key == ("trees", "compose"):
        return reports.trees_compose(args.left, args.label, args.right)
    if key == ("loperad", "build"):
        return reports.loperad_build(args.arity, args.max_arity, args.oracle)
    if key == ("loperad", "homology"):
        return asyncio.run(reports.loperad_homology(
            args.arity, args.max_arity, args.oracle, args.n, args.convention, args.threads
        ))
    if key == ("fm", "strata"):
        return reports.fm_strata(args.leaves, args.n, args.max_arity)
    if key == ("fm", "incidence"):
        return reports.fm_incidence(args.tree, args.other)
    if key == ("ce", "homology"):
        return asyncio.run(reports.ce_homology(args.lie, args.cutoff, args.max_basis, args.threads))
    if key == ("hochschild", "homology"):
        return asyncio.run(reports.hochschild_homology(
            args.algebra, args.max_degree, args.variant, args.max_basis, args.max_degree_limit, args.threads
        ))
    if key == ("trace", "certify"):
        return reports.trace_certify(args.algebra, args.max_degree, args.variant, args.max_degree_limit, args.max_basis)
    if key == ("trace", "induced"):
        return reports.trace_induced(args.algebra, args.max_degree, args.variant, args.max_degree_limit, args.max_basis)
    if key == ("weyl", "verify"):
        return reports.weyl_verify(args.n, args.v, args.manifold, args.cutoff, args.max_basis)
    raise argparse.ArgumentError(None, f"unknown command {' '.join(key)}")


def exit_status(error: BaseException) -> int:
    """Single place where failures become process exit codes."""
    if isinstance(error, WorkbenchError):
        return error.exit_status
    if isinstance(error, argparse.ArgumentError):
        return EXIT_INVALID
    return EXIT_FAILED


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except argparse.ArgumentError as e:
        print(f"error: {e}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return exit_status(e)

    started = time.perf_counter()
    try:
        report = dispatch(args)
    except WorkbenchError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return exit_status(e)
    except Exception as e:
        logger.error(f"Unexpected error: {e}", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return exit_status(e)

    if args.timing:
        report.wall_time = time.perf_counter() - started
    sys.stdout.write(report.render_json() if args.json else report.render_text())
    return EXIT_OK if report.status == "ok" else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(run())
