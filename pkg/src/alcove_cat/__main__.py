"""
Command-line entry point for alcove-cat.

Subcommands:
    roots, marks, alcove, orbits, bound, realize   computations on one type
    verify                                         seeded verification campaign
    serve                                          MCP stdio server

Exit codes: 0 on success, 1 when a verification check fails, 2 on bad
arguments or a library error.
"""

import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from mcp.server.stdio import stdio_server
from pydantic import ValidationError

from alcove_cat import __version__
from alcove_cat.config import AlcoveCatConfig
from alcove_cat.cover_verifier import run as run_plan
from alcove_cat.errors import AlcoveCatError
from alcove_cat.models.lie_type import FAMILIES, LieType
from alcove_cat.models.verify import ALL_CHECKS, VerifyPlan, checks_for
from alcove_cat.orbit_classifier import ls_bound
from alcove_cat.parsers.plan import load_plan
from alcove_cat.reports import (
    alcove_data,
    alcove_text,
    bound_data,
    bound_text,
    marks_data,
    marks_text,
    orbits_data,
    orbits_text,
    realize_data,
    realize_text,
    root_data,
    root_text,
    verify_text,
)
from alcove_cat.server import AlcoveCatServer
from alcove_cat.storage.catalog import RootSystemCatalog
from alcove_cat.utils import safe_json_dumps

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _parse_override(text: str) -> tuple[int, int]:
    k, sep, v = text.partition("=")
    try:
        if not sep:
            raise ValueError
        key, value = int(k), int(v)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected k=v with integers, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"category override must be >= 0, got {value}")
    return key, value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=argparse.SUPPRESS,
        help="-v for INFO, -vv for DEBUG",
    )
    # SUPPRESS keeps a subcommand from resetting flags given before it.
    common.add_argument(
        "--json",
        action="store_true",
        default=argparse.SUPPRESS,
        help="emit JSON instead of a table",
    )

    lie = argparse.ArgumentParser(add_help=False)
    lie.add_argument("--family", choices=FAMILIES, type=str.upper, help="Dynkin family")
    lie.add_argument("--rank", type=int, help="rank n")

    guarded = argparse.ArgumentParser(add_help=False)
    guarded.add_argument(
        "--force", action="store_true", help="allow ranks above the configured max_rank"
    )

    parser = argparse.ArgumentParser(
        prog="alcove-cat",
        description="Alcove geometry, vertex orbits and LS-category bounds of compact Lie groups",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("roots", parents=[common, lie], help="root data of a simple type")
    sub.add_parser("marks", parents=[common, lie], help="marks of the highest root")
    sub.add_parser(
        "alcove", parents=[common, lie, guarded], help="vertices, faces and stabilizer orders"
    )
    sub.add_parser("orbits", parents=[common, lie], help="classification of the orbits O_k")

    bound = sub.add_parser("bound", parents=[common, lie], help="LS-category upper bound")
    bound.add_argument(
        "--assume-conjecture",
        action="store_true",
        help="count conjectured relative categories as summands",
    )
    bound.add_argument(
        "--override",
        action="append",
        type=_parse_override,
        default=[],
        metavar="K=V",
        help="assume cat_G(O_K) = V (repeatable)",
    )

    realize = sub.add_parser("realize", parents=[common, lie], help="exp v_k in a concrete model")
    realize.add_argument("--k", type=int, required=True, help="vertex index")
    realize.add_argument(
        "--model", choices=["quat", "clifford", "so", "complex"], help="matrix or Clifford model"
    )

    verify = sub.add_parser(
        "verify", parents=[common, lie, guarded], help="run a verification campaign"
    )
    verify.add_argument(
        "--checks",
        default="all",
        help=f"'all' or a comma-separated subset of {', '.join(ALL_CHECKS)}",
    )
    verify.add_argument("--seed", type=int, help="seed of the pseudo-random source")
    verify.add_argument("--samples", type=int, help="random samples per check")
    verify.add_argument("--word-length-bound", type=int, help="affine Weyl word-length bound")
    verify.add_argument("--grid-denominator", type=int, help="denominator of sampled points")
    verify.add_argument("--plan", type=Path, help="YAML plan file")
    verify.add_argument("--timings", action="store_true", help="include durations in JSON")

    sub.add_parser("serve", parents=[common], help="run the MCP stdio server")
    return parser


def _lie_type(parser: argparse.ArgumentParser, args: argparse.Namespace) -> LieType:
    if args.family is None or args.rank is None:
        parser.error(f"{args.command}: --family and --rank are required")
    return LieType.of(args.family, args.rank)


def _verify_plan(
    lie_type: Optional[LieType], args: argparse.Namespace, config: AlcoveCatConfig
) -> VerifyPlan:
    if args.plan is not None:
        plan = load_plan(args.plan, config)
        updates = {
            key: value
            for key, value in {
                "seed": args.seed,
                "samples": args.samples,
                "word_length_bound": args.word_length_bound,
                "grid_denominator": args.grid_denominator,
            }.items()
            if value is not None
        }
        return VerifyPlan.model_validate({**plan.model_dump(), **updates})

    assert lie_type is not None
    if args.checks.strip().lower() == "all":
        checks: list[str] = list(checks_for(lie_type))
    else:
        checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    return VerifyPlan(
        lie_type=lie_type,
        checks=checks,
        seed=config.seed if args.seed is None else args.seed,
        samples=config.samples if args.samples is None else args.samples,
        word_length_bound=(
            config.word_length_bound if args.word_length_bound is None else args.word_length_bound
        ),
        grid_denominator=(
            config.grid_denominator if args.grid_denominator is None else args.grid_denominator
        ),
        boundary_rate=config.boundary_rate,
    )


def _dispatch(
    parser: argparse.ArgumentParser, args: argparse.Namespace, config: AlcoveCatConfig
) -> int:
    catalog = RootSystemCatalog(config)
    command = args.command
    as_json = getattr(args, "json", False)

    if command == "verify":
        lie_type = None if args.plan is not None else _lie_type(parser, args)
        plan = _verify_plan(lie_type, args, config)
        config.guard_rank(plan.lie_type.rank, args.force)
        report = run_plan(plan, config)
        print(report.to_json(timings=args.timings) if as_json else verify_text(report))
        return EXIT_OK if report.passed else EXIT_FAILED

    lie_type = _lie_type(parser, args)
    if command == "roots":
        rs = catalog.get(lie_type)
        print(safe_json_dumps(root_data(rs)) if as_json else root_text(rs))
    elif command == "marks":
        rs = catalog.get(lie_type)
        print(safe_json_dumps(marks_data(rs)) if as_json else marks_text(rs))
    elif command == "alcove":
        config.guard_rank(lie_type.rank, args.force)
        data = alcove_data(catalog.geometry(lie_type), config)
        print(safe_json_dumps(data) if as_json else alcove_text(data))
    elif command == "orbits":
        entries = orbits_data(catalog.get(lie_type))
        print(safe_json_dumps(entries) if as_json else orbits_text(lie_type, entries))
    elif command == "bound":
        report = ls_bound(
            catalog.get(lie_type),
            overrides=dict(args.override),
            assume_conjecture=args.assume_conjecture,
        )
        print(safe_json_dumps(bound_data(report)) if as_json else bound_text(report))
    elif command == "realize":
        data = realize_data(catalog.geometry(lie_type), args.k, args.model)
        print(safe_json_dumps(data) if as_json else realize_text(data))
    return EXIT_OK


async def serve(config: AlcoveCatConfig) -> None:
    """Run the MCP server over stdio until the client disconnects."""
    server = AlcoveCatServer(config)
    try:
        await server.start()
        logger.info("Starting MCP stdio server...")
        async with stdio_server() as (read_stream, write_stream):
            await server.mcp_server.run(
                read_stream,
                write_stream,
                server.mcp_server.create_initialization_options(),
            )
    finally:
        try:
            await server.stop()
        except Exception as e:
            logger.error(f"Error during shutdown: {e}")
        logger.info("Server stopped")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, run one subcommand and return the exit code.

    Example:
        >>> main(["bound", "--family", "A", "--rank", "5", "--json"])
        0
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE

    try:
        config = AlcoveCatConfig()
    except ValidationError as e:
        print(f"alcove-cat: invalid configuration: {e.errors()[0]['msg']}", file=sys.stderr)
        return EXIT_USAGE
    verbose = getattr(args, "verbose", 0)
    if verbose:
        config = config.model_copy(update={"log_level": "DEBUG" if verbose > 1 else "INFO"})
    config.configure_logging()

    if args.command == "serve":
        try:
            asyncio.run(serve(config))
        except KeyboardInterrupt:
            logger.info("Received keyboard interrupt")
        return EXIT_OK

    try:
        return _dispatch(parser, args, config)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE
    except ValidationError as e:
        err = e.errors()[0]
        location = ".".join(str(p) for p in err["loc"])
        print(f"alcove-cat: {location}: {err['msg']}", file=sys.stderr)
        return EXIT_USAGE
    except AlcoveCatError as e:
        print(f"alcove-cat: {e}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    """
    Synchronous entry point for the ``alcove-cat`` command.

    Example:
        $ alcove-cat bound --family C --rank 4 --assume-conjecture
        $ ALCOVE_CAT_LOG_LEVEL=DEBUG alcove-cat verify --family C --rank 2
    """
    sys.exit(main())


if __name__ == "__main__":
    run()
