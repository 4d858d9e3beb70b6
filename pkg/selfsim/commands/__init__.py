import argparse
from dataclasses import dataclass, field
from typing import Callable

from selfsim.config import logger
from selfsim.exceptions import CommandError, UsageError


def arg(*flags, **kwargs):
    return flags, kwargs


@dataclass
class Command:
    name: str
    summary: str
    handler: Callable
    arguments: list = field(default_factory=list)
    default_format: str = "json"


class CommandRouter:
    """Collects subcommands of one area; `include` attaches them to the CLI parser."""

    def __init__(self):
        self.commands: list[Command] = []

    def command(self, name: str, summary: str, arguments=(), default_format: str = "json"):
        def decorator(func):
            self.commands.append(Command(name, summary, func, list(arguments), default_format))
            return func
        return decorator

    def cites(self, operation: str, reference: str):
        """Record the library function behind a command and the result it implements."""
        def decorator(func):
            func.operation, func.reference = operation, reference
            return func
        return decorator

    def include(self, subparsers, parents):
        for cmd in self.commands:
            description = (cmd.handler.__doc__ or cmd.summary).strip()
            if hasattr(cmd.handler, "operation"):
                description += f"\n\noperation: selfsim.{cmd.handler.operation}\nreference: {cmd.handler.reference}"
            parser = subparsers.add_parser(
                cmd.name,
                help=cmd.summary,
                description=description,
                parents=parents,
                formatter_class=argparse.RawDescriptionHelpFormatter,
            )
            for flags, kwargs in cmd.arguments:
                parser.add_argument(*flags, **kwargs)
            parser.set_defaults(handler=cmd.handler, default_format=cmd.default_format, command=cmd.name)


GROUP = arg("--group", required=True, help="catalog:NAME or path to a group definition file")
SYSTEM = arg("--system", required=True, help="catalog:NAME or path to a digit system JSON file")
TABLE = arg("--table", required=True, help="catalog:NAME or path to a rule table file")
LEVEL = arg("--level", type=int, required=True, help="tree level n")
GENS = arg("--gens", default=None, help="comma separated generator names (default: all)")


def parse_gens(group, text):
    if text is None:
        return None
    names = [g.strip() for g in text.split(",") if g.strip()]
    unknown = [g for g in names if g not in group.generators]
    if unknown:
        raise UsageError(f"--gens: unknown generators {unknown}")
    return names


def wrap(name: str, func):
    """Run a command body, turning unexpected failures into domain errors."""
    try:
        return func()
    except CommandError:
        raise
    except Exception as e:
        logger.error(f"{name} error: {e}")
        raise CommandError(f"{name} error: {e}")
