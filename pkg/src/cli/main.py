"""``gdlz`` command-line entry point."""

import argparse
import sys
from typing import Callable, Optional, Sequence

from loguru import logger

from src.utils.config import settings
from src.utils.errors import GdlzError, GdlzSyntaxError
from src.utils.logging import configure_logging

from . import commands

Handler = Callable[[argparse.Namespace], int]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gdlz", description="Game Description Logic with Integers"
    )
    parser.add_argument("--log-level", default=None, help="loguru level (default: GDLZ_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse and echo a formula or rule file")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("formula", nargs="?", help="formula text")
    source.add_argument("--rules", help="rule file")
    p.add_argument("--signature", help="model file whose signature the formulas must conform to")
    p.add_argument("--desugar", action="store_true", help="also print the core form")
    p.set_defaults(handler=commands.cmd_parse)

    p = sub.add_parser("nim", help="write the model and rules of a Nim game")
    p.add_argument("--heaps", required=True, help="heap sizes, e.g. 5,3")
    p.add_argument("--out", help="output directory (default: GDLZ_DATA_DIR)")
    p.set_defaults(handler=commands.cmd_nim)

    p = sub.add_parser("run", help="replay, enumerate or play paths of a model")
    p.add_argument("--model", required=True)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--actions", help="path file with one joint action per line")
    mode.add_argument("--enumerate", action="store_true", help="every complete path")
    mode.add_argument("--interactive", action="store_true", help="read joint actions from stdin")
    p.add_argument("--max-depth", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--rules", help="rules to evaluate after each interactive step")
    p.set_defaults(handler=commands.cmd_run)

    p = sub.add_parser("check", help="evaluate a formula or check a rule set")
    p.add_argument("--model", required=True)
    p.add_argument("--path", help="path file")
    what = p.add_mutually_exclusive_group(required=True)
    what.add_argument("--formula")
    what.add_argument("--is-model-of", dest="is_model_of", metavar="RULES")
    where = p.add_mutually_exclusive_group()
    where.add_argument("--stage", type=int, default=None)
    where.add_argument("--global", dest="is_global", action="store_true")
    p.add_argument("--max-depth", type=int, default=None)
    p.set_defaults(handler=commands.cmd_check)

    p = sub.add_parser("translate", help="translate a model, path and formulas into GDL")
    p.add_argument("--mode", choices=("path", "complete"), required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--path")
    p.add_argument("--zmin", type=int)
    p.add_argument("--zmax", type=int)
    formulas = p.add_mutually_exclusive_group()
    formulas.add_argument("--formula")
    formulas.add_argument("--rules")
    p.add_argument("--stage", type=int, default=None, help="stage of the path (default 0)")
    p.add_argument("--out", help="directory for the translated files")
    p.set_defaults(handler=commands.cmd_translate)

    p = sub.add_parser("analyze", help="succinctness report of a rule set")
    p.add_argument("--rules", required=True)
    p.add_argument("--mode", choices=("path", "complete"), required=True)
    p.add_argument("--model")
    p.add_argument("--path")
    p.add_argument("--stage", type=int, default=None, help="stage of the path (default 0)")
    p.add_argument("--vars", help="comma-separated variables (complete mode)")
    p.add_argument("--zmin", type=int)
    p.add_argument("--zmax", type=int)
    p.add_argument("--format", choices=("table", "kv"), default="table")
    p.set_defaults(handler=commands.cmd_analyze)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level or settings.log_level)
    handler: Handler = args.handler
    try:
        commands.validate_flags(args)
        return handler(args)
    except GdlzSyntaxError as exc:
        logger.error(f"Syntax error: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return commands.EXIT_INPUT
    except (GdlzError, OSError, ValueError) as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return commands.EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
