from selfsim.commands import TABLE, CommandRouter, arg, wrap
from selfsim.dependencies import get_rule_table
from selfsim.exceptions import UsageError
from selfsim.utils import invsemi
from selfsim.utils.words import OmegaWord, is_admissible

router = CommandRouter()


def _apply(args, table):
    if not args.map or args.point is None:
        raise UsageError("semigroup apply needs --map and --point", exit_code=2)
    w = OmegaWord.parse(table.alphabet, args.point)
    if not is_admissible(table.sft, w):
        raise UsageError(f"{w} is not an admissible word of {table.name}")
    return str(invsemi.apply_map(table, args.map, w))


def _successor(args, table):
    if args.n is None:
        raise UsageError("semigroup successor needs --n", exit_code=2)
    return {"n": args.n, "successor": invsemi.fibonacci_successor(table, args.n, args.length)}


def _involution(args, table):
    names = [args.map] if args.map else list(table.map_names)
    return {name: invsemi.involution_check(table, name, args.depth, args.tail_period) for name in names}


ACTIONS = {"apply": _apply, "successor": _successor, "involution": _involution}


@router.command("semigroup", "Rule-table maps on one-sided subshifts: apply, successor, involution",
                [arg("action", choices=sorted(ACTIONS)),
                 TABLE,
                 arg("--map", default=None, help="map name from the table"),
                 arg("--point", default=None, help="admissible word PRE(PERIOD)"),
                 arg("--n", type=int, default=None, help="integer whose Zeckendorf successor is wanted"),
                 arg("--length", type=int, default=32, help="Zeckendorf digits"),
                 arg("--depth", type=int, default=6, help="prefix length for the involution check"),
                 arg("--tail-period", type=int, default=3, help="longest periodic tail tried")])
@router.cites("utils.invsemi.apply_map", "inverse semigroups of partial maps on subshifts: Fibonacci adding machine, Penrose and Apollonian maps")
def semigroup_command(args):
    """apply: image of a word under a map, computed lazily with cycle detection.
successor: m + 1 through the Fibonacci odometer maps.
involution: apply each map twice to admissible words and compare."""
    def run():
        return ACTIONS[args.action](args, get_rule_table(args.table))
    return wrap(f"semigroup {args.action}", run)
