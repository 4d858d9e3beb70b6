from selfsim.commands import GROUP, LEVEL, CommandRouter, arg, wrap
from selfsim.config import settings
from selfsim.dependencies import get_group
from selfsim.exceptions import ClosureExceeded
from selfsim.models import NucleusReport
from selfsim.utils import contraction as C
from selfsim.utils import mealy
from selfsim.utils.groups import format_word, parse_element
from selfsim.utils.schreier import export_csv, export_dot

router = CommandRouter()


def _nucleus_or_exceeded(args):
    group = get_group(args.group)
    return group, C.nucleus(group, args.cap)


def _require_nucleus(args):
    group, result = _nucleus_or_exceeded(args)
    if isinstance(result, C.Exceeded):
        raise ClosureExceeded(f"no nucleus found within {result.cap} elements")
    return group, result


@router.command("nucleus", "Nucleus of a contracting group, found by iterated restriction closure", [GROUP])
@router.cites("utils.contraction.nucleus", "nucleus of a contracting group: restrictions of long words lie in a finite set")
def nucleus_command(args):
    """Nucleus search: recurrent part of the restriction closure of N*N, repeated until stable.

    --format text prints the nucleus as a wreath recursion, --format dot its Moore diagram."""
    def run():
        group, result = _nucleus_or_exceeded(args)
        if isinstance(result, C.Exceeded):
            if args.output_format in ("text", "dot"):
                raise ClosureExceeded(f"no nucleus found within {result.cap} elements")
            return NucleusReport(group=group.name, contracting=False, cap=result.cap).model_dump()
        if args.output_format == "text":
            return result.to_dsl()
        if args.output_format == "dot":
            return mealy.to_dot(result.automaton, f"nucleus_{group.name}")
        return NucleusReport(
            group=group.name,
            contracting=True,
            size=len(result),
            elements=[format_word(group, e.word) for e in result.elements],
            cap=args.cap or settings.NUCLEUS_CAP,
            open_set_condition=C.open_set_condition(result),
        ).model_dump()
    return wrap("nucleus", run)


@router.command("contracting", "Semi-decide contraction within --cap candidate elements", [GROUP])
@router.cites("utils.contraction.is_contracting", "contracting self-similar groups and their nuclei")
def contracting_command(args):
    def run():
        group = get_group(args.group)
        result = C.is_contracting(group, args.cap)
        if isinstance(result, C.Inconclusive):
            return {"group": group.name, "result": "inconclusive", "cap": result.cap}
        return {"group": group.name, "result": "contracting", "nucleus_size": len(result.nucleus)}
    return wrap("contracting", run)


@router.command("closure", "Restriction closure of a set of elements",
                [GROUP, arg("--element", action="append", required=True, help="group word, repeatable")])
@router.cites("utils.contraction.restriction_closure", "smallest set of elements closed under restrictions")
def closure_command(args):
    def run():
        group = get_group(args.group)
        seed = [parse_element(group, text) for text in args.element]
        return [str(e) for e in C.restriction_closure(group, seed, args.cap)]
    return wrap("closure", run)


@router.command("contraction-estimate", "Empirical contraction coefficient from sampled restrictions",
                [GROUP,
                 arg("--samples", type=int, default=16),
                 arg("--depth", type=int, default=4, help="restriction depth"),
                 arg("--use-nucleus", action="store_true", help="measure restrictions in the nucleus by their shortest nucleus word")])
@router.cites("utils.contraction.contraction_estimate", "contraction coefficient lim sup (|g|_v| / |g|)^(1/n)")
def contraction_estimate_command(args):
    def run():
        if args.use_nucleus:
            group, found = _require_nucleus(args)
        else:
            group, found = get_group(args.group), None
        value = C.contraction_estimate(group, found, samples=args.samples, depth=args.depth, seed=args.seed)
        return {"group": group.name, "estimate": value, "depth": args.depth, "samples": args.samples, "seed": args.seed}
    return wrap("contraction-estimate", run)


@router.command("osc", "Open set condition: every nucleus element restricts to the identity", [GROUP])
@router.cites("utils.contraction.open_set_condition", "open set condition: every nucleus element has a trivial restriction")
def osc_command(args):
    def run():
        group, result = _require_nucleus(args)
        return C.open_set_condition(result)
    return wrap("osc", run)


@router.command("equiv", "Asymptotic equivalence of two left-infinite words via the nucleus",
                [GROUP,
                 arg("--left", required=True, help="left-infinite word (TAIL)SUFFIX"),
                 arg("--right", required=True, help="left-infinite word (TAIL)SUFFIX")])
@router.cites("utils.contraction.asymptotically_equivalent", "asymptotic equivalence of left-infinite words through sequences in the nucleus")
def equiv_command(args):
    def run():
        group, result = _require_nucleus(args)
        left = C.LeftWord.parse(group.alphabet, args.left)
        right = C.LeftWord.parse(group.alphabet, args.right)
        return C.asymptotically_equivalent(result, left, right)
    return wrap("equiv", run)


@router.command("tile-graph", "Adjacency graph of level-n tiles: v ~ v^h for h in the nucleus", [GROUP, LEVEL])
@router.cites("utils.contraction.tile_graph", "tile adjacency graphs are simplicial Schreier graphs of the nucleus")
def tile_graph_command(args):
    def run():
        group, result = _require_nucleus(args)
        graph = C.tile_graph(result, args.level, args.max_level)
        if args.output_format == "dot":
            return export_dot(graph, name=f"tiles_{group.name}_{args.level}")
        if args.output_format == "csv":
            return export_csv(graph)
        return {"vertices": list(graph.names), "edges": [[graph.names[s], graph.names[t]] for s, t, _ in graph.edges]}
    return wrap("tile-graph", run)
