"""Command-line interface: ``orbitdx <command> [flags]``.

JSON results go to stdout, diagnostics and logs to stderr. Exit codes:
0 ok, 2 input error (including coordinates off the orbit), 3 chart or
extraction failure, 4 final residue mismatch, 5 verification mismatch,
6 persistent degeneracy.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from app import config, tools
from app.catalog import is_structure_name, resolve_structure
from app.errors import InputError, OrbitError, VerificationMismatchError
from app.payloads import read_json

logger = logging.getLogger(__name__)


def _structure(arg: str) -> Any:
    """A structure file path, or the name of a bundled structure."""
    if Path(arg).exists() or not is_structure_name(arg):
        return read_json(arg)
    return read_json(resolve_structure(arg))


def _seed(value: str) -> int:
    seed = int(value)
    if not 0 <= seed < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {value}")
    return seed


def _positive(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return number


def _seed_or_default(args: argparse.Namespace) -> int:
    return config.default_seed() if args.seed is None else args.seed


def _require(args: argparse.Namespace, *names: str) -> None:
    for name in names:
        if getattr(args, name) is None:
            raise InputError(f"{args.command} needs --{name.replace('_', '-')}")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_param(args: argparse.Namespace) -> Any:
    _require(args, "coords")
    structure = _structure(args.structure) if args.structure else None
    return tools.parameterize_matrix(read_json(args.coords), structure)


def cmd_extract(args: argparse.Namespace) -> Any:
    _require(args, "structure", "matrix")
    chart: Any = "auto" if args.chart == "auto" else read_json(args.chart)
    return tools.extract_coordinates(_structure(args.structure), read_json(args.matrix), chart)


def cmd_verify_darboux(args: argparse.Namespace) -> Any:
    _require(args, "structure")
    coords = read_json(args.coords) if args.coords else None
    report = tools.verify_darboux(
        _structure(args.structure), coords, _seed_or_default(args), args.bound, args.complex
    )
    if not report["match"]:
        raise VerificationMismatchError(
            f"Gram matrix differs from the canonical form: {report['first_mismatch']}",
            detail=report,
        )
    return report


def cmd_project(args: argparse.Namespace) -> Any:
    _require(args, "structure", "eigenvalue")
    return tools.project_structure(_structure(args.structure), args.eigenvalue)


def cmd_info(args: argparse.Namespace) -> Any:
    _require(args, "structure")
    return tools.orbit_info(_structure(args.structure))


def cmd_random_point(args: argparse.Namespace) -> Any:
    _require(args, "structure")
    return tools.random_point(
        _structure(args.structure), _seed_or_default(args), args.mode, args.bound, args.complex
    )


def cmd_jordan_verify(args: argparse.Namespace) -> Any:
    _require(args, "matrix", "eigenvalues")
    eigenvalues = [v for v in args.eigenvalues.split(",") if v.strip()]
    return tools.jordan_verify(read_json(args.matrix), eigenvalues)


def cmd_roundtrip(args: argparse.Namespace) -> Any:
    _require(args, "structure")
    summary = tools.roundtrip(_structure(args.structure), _seed_or_default(args), args.trials, args.bound)
    if not summary["passed"]:
        first = summary["failures"][0]
        raise VerificationMismatchError(
            f"{len(summary['failures'])} roundtrip failure(s); first at seed {first['seed']}: {first}",
            detail=summary,
        )
    return summary


COMMANDS: dict[str, tuple[Callable[[argparse.Namespace], Any], str]] = {
    "param": (cmd_param, "Matrix of a coordinate point (A = Q rho Q^-1)"),
    "extract": (cmd_extract, "Canonical coordinates of an orbit point"),
    "verify-darboux": (cmd_verify_darboux, "Compare the Kirillov-Kostant Gram matrix with the canonical one"),
    "project": (cmd_project, "Project a Jordan structure along an eigenvalue"),
    "info": (cmd_info, "Summarize a structure: N, type sequence, orbit dimension"),
    "random-point": (cmd_random_point, "Seeded random point of an orbit"),
    "jordan-verify": (cmd_jordan_verify, "Weyr tables and Jordan structure of a matrix"),
    "roundtrip": (cmd_roundtrip, "Check extract and parameterize invert each other"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitdx",
        description="Exact Darboux coordinates on coadjoint orbits of GL(N, C).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {config.VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        cmd = sub.add_parser(name, help=help_text, description=help_text)
        cmd.add_argument("--structure", metavar="F", help="structure or type-sequence JSON, or a bundled name")
        cmd.add_argument("--coords", metavar="F", help="coordinates JSON")
        cmd.add_argument("--matrix", metavar="F", help="matrix JSON")
        cmd.add_argument("--eigenvalue", metavar="S", help="one scalar, e.g. 2+3*i")
        cmd.add_argument("--eigenvalues", metavar="S,...", help="comma-separated scalars")
        cmd.add_argument("--chart", metavar="auto|F", default="auto", help="'auto' or a chart JSON file")
        cmd.add_argument("--seed", type=_seed, metavar="U64", help=f"random seed (default ${config.SEED_ENV_VAR} or 0)")
        cmd.add_argument("--trials", type=_positive, default=config.DEFAULT_TRIALS, metavar="K")
        cmd.add_argument("--mode", choices=("coords", "conjugate"), default="coords")
        cmd.add_argument("--complex", action="store_true", help="draw complex random coordinates")
        cmd.add_argument("--bound", type=_positive, default=config.DEFAULT_BOUND, metavar="B")
        cmd.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit code."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else config.LOG_LEVEL,
        format=config.LOG_FORMAT,
    )
    handler, _ = COMMANDS[args.command]
    logger.debug("running %s", args.command)
    try:
        result = handler(args)
    except VerificationMismatchError as e:
        if e.detail:
            print(json.dumps(e.detail, indent=2))
        print(f"orbitdx {args.command}: {e}", file=sys.stderr)
        return e.exit_code
    except OrbitError as e:
        print(f"orbitdx {args.command}: {e}", file=sys.stderr)
        return e.exit_code
    print(json.dumps(result, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
