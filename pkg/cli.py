import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

from commands import COMMANDS
from commands.abstract_command import ERROR, FINDING
from commands.polytope_command import KINDS
from commands.sweep_command import FAMILIES
from shared import __version__
from shared.config import OUTPUT_FORMATS, RunConfig
from shared.errors import ParseError, ToolkitError
from shared.utils import set_log_level, setup_logger

logger = setup_logger(__name__)

EXIT_CODES = {"success": 0, FINDING: 2, ERROR: 1}


def _common_flags() -> argparse.ArgumentParser:
    """Global flags, accepted before or after the subcommand."""
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--n", type=int, help="Rank n of S_n.")
    common.add_argument("--seed", type=int, help="Seed for every random choice.")
    common.add_argument("--format", choices=OUTPUT_FORMATS, dest="output_format")
    common.add_argument("--jobs", type=int, help="Worker processes for sweeps.")
    common.add_argument("--limit", type=int, help="Cap on the number of items reported.")
    common.add_argument("--samples", type=int, help="Sample count for sampled checks.")
    common.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR.")
    common.add_argument("--no-progress", action="store_true", help="Hide progress bars.")
    common.add_argument("--cache-dir", help="Directory of the report cache.")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="torus-orbits",
        description="Torus orbit closures in flag varieties: polytopes, fans and checks.",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    bruhat = subparsers.add_parser("bruhat", parents=[common], help="Compare two permutations.")
    bruhat.add_argument("v")
    bruhat.add_argument("w")

    polytope = subparsers.add_parser(
        "polytope", parents=[common], help="Describe Q_w, Q^v_w, a permutohedron or a matroid."
    )
    polytope.add_argument("kind", choices=KINDS)
    polytope.add_argument("values", nargs="*", help="Permutations, or n for perm.")
    polytope.add_argument("--fan", action="store_true", help="Include the normal fan.")

    poincare = subparsers.add_parser(
        "poincare", parents=[common], help="A_w and the Poincare polynomial of Y_w."
    )
    poincare.add_argument("w")

    orbit = subparsers.add_parser(
        "orbit", parents=[common], help="Fixed points, retractions and fan of a flag."
    )
    orbit.add_argument("matrix", nargs="?", help="CSV of rationals; random with --n if absent.")

    retraction = subparsers.add_parser(
        "retraction", parents=[common], help="Retraction tables of a Coxeter subset."
    )
    retraction.add_argument("--matroid", help="JSON file {'n': .., 'elements': [..]}.")
    retraction.add_argument("--matrix", help="CSV flag matrix; uses its fixed points.")

    sweep = subparsers.add_parser("sweep", parents=[common], help="Run a family-wide check.")
    sweep.add_argument("family", choices=FAMILIES)

    catalan = subparsers.add_parser(
        "catalan", parents=[common], help="Triangulation fans, or pair data for a permutation."
    )
    catalan.add_argument("u", nargs="?")

    bott = subparsers.add_parser("bott", parents=[common], help="Fano Bott fans and forests.")
    bott.add_argument("--forest", help="Forest JSON file.")
    bott.add_argument("--triangulation", help="Triangulation JSON file.")
    return parser


def _read(path: Optional[str]) -> Optional[str]:
    if not path:
        return None
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"Cannot read {path}: {e.strerror}")


def _arguments(args: argparse.Namespace) -> Dict[str, Any]:
    """Subcommand arguments with file contents inlined, so reports depend on content only."""
    command = args.command
    if command == "bruhat":
        return {"v": args.v, "w": args.w}
    if command == "polytope":
        return {"kind": args.kind, "values": args.values, "fan": args.fan}
    if command == "poincare":
        return {"w": args.w}
    if command == "orbit":
        return {"matrix": _read(args.matrix), "n": getattr(args, "n", None)}
    if command == "retraction":
        return {
            "matroid": _read(args.matroid),
            "matrix": _read(args.matrix),
            "n": getattr(args, "n", None),
        }
    if command == "sweep":
        return {"family": args.family, "n": getattr(args, "n", None)}
    if command == "catalan":
        return {"u": args.u, "n": getattr(args, "n", None)}
    return {
        "forest": _read(args.forest),
        "triangulation": _read(args.triangulation),
        "n": getattr(args, "n", None),
    }


def _error_envelope(error: ToolkitError) -> dict:
    return {
        "status": ERROR,
        "output": None,
        "error": {"type": error.error_code, "message": error.message},
        "version": __version__,
        "config": None,
    }


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "log_level", None):
        set_log_level(args.log_level)
    try:
        arguments = _arguments(args)
        config = RunConfig.from_env(
            command=args.command,
            n=getattr(args, "n", None),
            seed=getattr(args, "seed", None),
            samples=getattr(args, "samples", None),
            output_format=getattr(args, "output_format", None),
            jobs=getattr(args, "jobs", None),
            limit=getattr(args, "limit", None),
            progress=False if getattr(args, "no_progress", False) else None,
            cache_dir=getattr(args, "cache_dir", None),
            arguments=arguments,
        ).validate()
    except ToolkitError as e:
        logger.error(f"Invalid invocation: {e.message}")
        sys.stdout.write(json.dumps(_error_envelope(e), indent=2, sort_keys=True) + "\n")
        return EXIT_CODES[ERROR]

    command = COMMANDS[args.command](config)
    envelope = command.run(arguments)
    sys.stdout.write(command.render(envelope))
    return EXIT_CODES[envelope["status"]]


if __name__ == "__main__":
    raise SystemExit(main())
