import argparse
import json
import sys
from pathlib import Path

from pydantic import ValidationError

from selfsim.config import logger, settings
from selfsim.exceptions import CommandError

# Import routers
from selfsim.commands import abelian, catalog, contraction, group, schreier, semigroup, spectra
from selfsim.models import Invocation

ROUTERS = [group, contraction, schreier, spectra, abelian, semigroup, catalog]

# Parameters that belong to the invocation itself, not to the subcommand
GLOBAL_FLAGS = {"seed", "tol", "cap", "max_level", "format", "output", "handler", "default_format", "command", "output_format"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CommandError(f"{self.prog}: {message}", exit_code=2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help=f"random seed (default {settings.SEED})")
    common.add_argument("--tol", type=float, default=None, help=f"numeric tolerance (default {settings.TOLERANCE})")
    common.add_argument("--cap", type=int, default=None, help="search cap for orders, closures and nuclei")
    common.add_argument("--max-level", type=int, default=None, help=f"largest d^n materialized (default {settings.MAX_LEVEL_POINTS})")
    common.add_argument("--format", default=None, choices=["json", "text", "dot", "csv", "pgm"])
    common.add_argument("--output", default=None, help="write the result to this file instead of stdout")

    parser = _Parser(prog="selfsim", description="Self-similar groups, automata and their limit objects.")
    subparsers = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND", parser_class=_Parser)
    subparsers.required = True
    for module in ROUTERS:
        module.router.include(subparsers, [common])
    return parser


def _invocation(args) -> Invocation:
    params = {k: v for k, v in vars(args).items() if k not in GLOBAL_FLAGS and k != "subcommand"}
    source = params.get("group") or params.get("system") or params.get("table")
    try:
        return Invocation(
            subcommand=args.command,
            source=source,
            params=params,
            output_format=args.format or args.default_format,
            output_path=args.output,
            seed=args.seed,
            tolerance=args.tol,
        )
    except ValidationError as e:
        raise CommandError(f"invalid invocation: {e}", exit_code=2)


def serialize(result) -> bytes:
    if isinstance(result, bytes):
        return result
    if isinstance(result, str):
        return (result if result.endswith("\n") else result + "\n").encode()
    if isinstance(result, bool):
        return b"true\n" if result else b"false\n"
    return (json.dumps(result, sort_keys=True, indent=2) + "\n").encode()


def run(argv=None) -> int:
    """Parse argv, dispatch to the subcommand handler and write its output; returns the exit code."""
    try:
        args = build_parser().parse_args(argv)
        args.seed = settings.SEED if args.seed is None else args.seed
        args.tol = settings.TOLERANCE if args.tol is None else args.tol
        args.max_level = args.max_level or settings.MAX_LEVEL_POINTS
        invocation = _invocation(args)
        args.output_format = invocation.output_format
        logger.info(f"running {invocation.subcommand} on {invocation.source or '-'} as {invocation.output_format}")
        data = serialize(args.handler(args))
        if invocation.output_path:
            Path(invocation.output_path).write_bytes(data)
        else:
            sys.stdout.buffer.write(data)
            sys.stdout.flush()
        return 0
    except CommandError as e:
        print(f"error: {e.detail}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.exception(f"Unhandled Exception: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
