"""
bell_rogalski/cli.py

Batch entry point.

Subcommands:
    validate      — datum axioms (plus graded identities with --check)
    mul           — product of two graded elements
    ideal         — canonical ideal I^(alpha), membership with --contains
    breaks        — break offsets along each axis of an orbit
    classify      — simple weight modules on an orbit
    module-table  — basis and generator action of one simple module
    diagram       — SVG / TikZ picture of an orbit
    tgwa          — TGWA conversion (to / from)
    tensor        — twisted tensor product of two data
    fixed-ring    — fixed ring of an induced automorphism
    gkdim         — GK dimension with its hypothesis checklist
    simplicity    — SIMPLE / NOT_SIMPLE / INCONCLUSIVE with a trail

Reports go to standard output, logs to standard error.  Exit status: 0 on
success (INCONCLUSIVE included), 1 on semantic failures, 2 on parse errors.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from typing import Any, Callable, Optional

from .core.config import Report
from .core.datafile import write_text
from .core.errors import BellRogalskiError, ParseError
from .core.formatters import FORMATS, check_report, format_json, format_report
from .tools.algebra import handle_ideal, handle_mul, handle_validate
from .tools.modules import handle_breaks, handle_classify, handle_diagram, handle_module_table
from .tools.simplicity import handle_simplicity
from .tools.structure import handle_fixed_ring, handle_gkdim, handle_tensor, handle_tgwa

logging.basicConfig(
    level=getattr(logging, os.getenv("LOG_LEVEL", "WARNING").upper(), logging.WARNING),
    format="%(levelname)s [%(name)s] %(message)s",
)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PARSE = 2

HANDLERS: dict[str, Callable[[dict[str, Any]], dict]] = {
    "validate":     handle_validate,
    "mul":          handle_mul,
    "ideal":        handle_ideal,
    "breaks":       handle_breaks,
    "classify":     handle_classify,
    "module-table": handle_module_table,
    "diagram":      handle_diagram,
    "tgwa":         handle_tgwa,
    "tensor":       handle_tensor,
    "fixed-ring":   handle_fixed_ring,
    "gkdim":        handle_gkdim,
    "simplicity":   handle_simplicity,
}

# --out names the constructed datum for these, the report file for the rest
CONSTRUCTIVE = {"tgwa", "tensor", "fixed-ring"}


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="json", help="report format (default json)")
    common.add_argument("--timing", action="store_true", help="include elapsed seconds in the report")
    common.add_argument("--out", help="write the report (or the constructed datum) to this file")

    def window(p: argparse.ArgumentParser, what: str = "orbit offsets") -> None:
        p.add_argument("--window", type=int, help=f"half-width of the {what} window")

    def no_verify(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--no-verify", dest="verify", action="store_const", const=False, default=None,
            help="skip re-verification of graded membership",
        )

    parser = argparse.ArgumentParser(
        prog="bell-rogalski",
        description="Bell-Rogalski algebras: validation, weight modules, constructions and simplicity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the datum axioms")
    p.add_argument("file")
    p.add_argument("--check", action="store_true", help="also run the graded-identity suite")
    window(p, "degree")

    p = sub.add_parser("mul", parents=[common], help="multiply two graded elements")
    p.add_argument("file")
    p.add_argument("--left", required=True, help="deg:poly;deg:poly")
    p.add_argument("--right", required=True, help="deg:poly;deg:poly")
    no_verify(p)

    p = sub.add_parser("ideal", parents=[common], help="canonical ideal I^(alpha)")
    p.add_argument("file")
    p.add_argument("--alpha", required=True, help="comma-separated degree")
    p.add_argument("--contains", help="polynomial to test for membership")

    for name, text in (
        ("breaks", "break offsets of an orbit"),
        ("classify", "simple weight modules on an orbit"),
        ("module-table", "basis and action of one simple module"),
        ("diagram", "SVG / TikZ picture of an orbit"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("file")
        p.add_argument("--point", required=True, help="base point, e.g. x=0,y=1")
        window(p)
        if name == "breaks":
            p.add_argument("--axis", type=int, help="1-based axis (default all)")
        if name == "classify":
            p.add_argument("--check", action="store_true", help="compare with the brute-force oracle")
        if name == "module-table":
            p.add_argument("--module", type=int, help="1-based descriptor index")
            p.add_argument("--degree-bound", type=int, help="degree bound of the b_alpha search")
            no_verify(p)
        if name == "diagram":
            p.add_argument("--svg", help="SVG output path")
            p.add_argument("--tikz", help="TikZ output path")

    p = sub.add_parser("tgwa", parents=[common], help="TGWA conversion")
    p.add_argument("file")
    p.add_argument("--direction", choices=("to", "from"), help="inferred from the file when omitted")
    no_verify(p)

    p = sub.add_parser("tensor", parents=[common], help="twisted tensor product")
    p.add_argument("--left", required=True, help="left datum file")
    p.add_argument("--right", required=True, help="right datum file")
    p.add_argument("--d", help="twisting scalars, rows split by ';'")
    p.add_argument("--lifts", help="YAML file of lifted automorphisms")
    window(p, "degree")
    no_verify(p)

    p = sub.add_parser("fixed-ring", parents=[common], help="fixed ring of Phi_gamma")
    p.add_argument("file")
    p.add_argument("--phi", help="base automorphism, e.g. x=-x")
    p.add_argument("--gamma", help="comma-separated scalars")
    window(p, "degree")

    p = sub.add_parser("gkdim", parents=[common], help="GK dimension")
    p.add_argument("file")

    p = sub.add_parser("simplicity", parents=[common], help="simplicity verdict")
    p.add_argument("file")
    p.add_argument("--kmax", type=int, help="bound of the hyperplane sweeps")
    p.add_argument("--axis", type=int, help="include the hyperplane table of this axis")
    return parser


def _arguments(args: argparse.Namespace) -> dict[str, Any]:
    skip = {"command", "format", "timing"}
    out = {k: v for k, v in vars(args).items() if k not in skip}
    if args.command not in CONSTRUCTIVE:
        out.pop("out", None)
    return out


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

def run(command: str, arguments: dict[str, Any]) -> tuple[Report, int]:
    """Run one command and return its report with the exit status."""
    handler = HANDLERS.get(command)
    if handler is None:
        return Report(command, status="error", result={"error": f"Unknown command: {command}"}), EXIT_FAILURE
    logger.info("%s: start", command)
    try:
        payload = handler(arguments)
    except ParseError as exc:
        logger.exception("Command %r raised: %s", command, exc)
        return Report(command, status="error", result=exc.to_dict()), EXIT_PARSE
    except BellRogalskiError as exc:
        logger.exception("Command %r raised: %s", command, exc)
        return Report(command, status="error", result=exc.to_dict()), EXIT_FAILURE
    except OSError as exc:
        logger.exception("Command %r raised: %s", command, exc)
        return Report(command, status="error", result={"error": str(exc), "kind": type(exc).__name__}), EXIT_FAILURE

    if "error" in payload:
        return Report(command, status="error", result={"error": payload["error"]}), EXIT_FAILURE
    report = Report(
        command,
        fingerprint=payload.get("fingerprint", ""),
        status=payload.get("status", "ok"),
        result=payload.get("result", {}),
        trail=payload.get("trail", []),
    )
    return report, EXIT_FAILURE if report.status == "failed" else EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    started = time.perf_counter()
    report, code = run(args.command, _arguments(args))
    elapsed = time.perf_counter() - started
    logger.info("%s: %s in %.3fs", args.command, report.status, elapsed)
    if args.timing:
        report.timing = elapsed

    problems = check_report(format_json(report))
    if problems:
        logger.warning("report does not match the schema: %s", "; ".join(problems))
    text = format_report(report, args.format)
    if args.out and args.command not in CONSTRUCTIVE:
        write_text(args.out, text)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
