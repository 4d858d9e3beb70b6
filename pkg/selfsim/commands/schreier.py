from selfsim.commands import GENS, GROUP, LEVEL, CommandRouter, arg, parse_gens, wrap
from selfsim.dependencies import get_group
from selfsim.models import GrowthReport
from selfsim.utils import schreier as S
from selfsim.utils.words import OmegaWord

router = CommandRouter()

POINT = arg("--point", required=True, help="basepoint PRE(PERIOD)")
RADIUS = arg("--radius", type=int, required=True)
SIMPLICIAL = arg("--simplicial", action="store_true", help="drop loops and merge parallel edges")


def _render(graph, args, name):
    if args.output_format == "dot":
        return S.export_dot(graph, simplicial=args.simplicial, name=name)
    if args.output_format == "csv":
        return S.export_csv(graph.simplicial() if args.simplicial else graph)
    g = graph.simplicial() if args.simplicial else graph
    return {
        "vertices": list(g.names),
        "edges": [{"src": g.names[s], "dst": g.names[t], "label": label} for s, t, label in g.edges],
        "directed": g.directed,
    }


@router.command("schreier", "Schreier graph of the action on level n", [GROUP, LEVEL, GENS, SIMPLICIAL])
@router.cites("utils.schreier.level_schreier", "Schreier graphs of the action on the levels of the tree")
def schreier_command(args):
    """Level-n Schreier graph; vertices are words of length n, edges v -> v^s for s and s^-1."""
    def run():
        group = get_group(args.group)
        graph = S.level_schreier(group, parse_gens(group, args.gens), args.level, args.max_level)
        return _render(graph, args, f"{group.name}_{args.level}")
    return wrap("schreier", run)


@router.command("orbit-ball", "Ball in the orbital graph of an eventually periodic point",
                [GROUP, POINT, RADIUS, GENS, SIMPLICIAL])
@router.cites("utils.schreier.orbit_ball", "orbital graphs as limits of pointed level Schreier graphs")
def orbit_ball_command(args):
    """Finite truncation of the orbital graph around PRE(PERIOD); only edges inside the ball are kept."""
    def run():
        group = get_group(args.group)
        point = OmegaWord.parse(group.alphabet, args.point)
        graph = S.orbit_ball(group, parse_gens(group, args.gens), point, args.radius)
        return _render(graph, args, f"{group.name}_ball")
    return wrap("orbit-ball", run)


@router.command("growth", "Ball sizes |B(v, r)| around a point of the orbital graph", [GROUP, POINT, RADIUS, GENS])
@router.cites("utils.schreier.ball_growth", "polynomial growth of orbital graphs of contracting groups, about 2^(2n) for IMG(z^2 - 1)")
def growth_command(args):
    def run():
        group = get_group(args.group)
        point = OmegaWord.parse(group.alphabet, args.point)
        graph = S.orbit_ball(group, parse_gens(group, args.gens), point, args.radius)
        seq = S.ball_growth(graph, 0, args.radius)
        return GrowthReport(basepoint=seq.basepoint, radius=args.radius, sizes=list(seq.sizes)).model_dump()
    return wrap("growth", run)


@router.command("cover-check", "Dropping the last letter maps the level n+1 graph onto level n", [GROUP, LEVEL, GENS])
@router.cites("utils.schreier.covering_check", "level Schreier graphs form a tower of coverings")
def cover_check_command(args):
    def run():
        group = get_group(args.group)
        return S.covering_check(group, parse_gens(group, args.gens), args.level, args.max_level)
    return wrap("cover-check", run)
