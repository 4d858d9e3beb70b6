from selfsim.commands import SYSTEM, CommandRouter, arg, wrap
from selfsim.dependencies import get_digit_system
from selfsim.exceptions import SizeBoundExceeded, UsageError
from selfsim.utils import abelian as AB
from selfsim.utils import mealy
from selfsim.utils.contraction import LeftWord
from selfsim.utils.words import Word

router = CommandRouter()


def _vector(text: str, dim: int) -> tuple[int, ...]:
    try:
        values = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected {dim} comma separated integers, got {text!r}")
    if len(values) != dim:
        raise UsageError(f"expected {dim} entries, got {len(values)}")
    return values


@router.command("digit-automaton", "Automaton of translation by an integer vector",
                [SYSTEM, arg("--vector", required=True, help="translation, comma separated integers")])
@router.cites("utils.abelian.digit_automaton", "self-similar actions of Z^n given by a contracting matrix and a digit set")
def digit_automaton_command(args):
    """States are integer vectors; (x_i w)^g = x_j w^h with h = A(r_i + g - r_j) integral."""
    def run():
        ds = get_digit_system(args.system)
        result = AB.digit_automaton(ds, _vector(args.vector, ds.dim), args.cap)
        if isinstance(result, AB.DigitExceeded):
            raise SizeBoundExceeded(f"translation automaton has more than {result.cap} states")
        if args.output_format == "dot":
            return mealy.to_dot(result.automaton, "translation")
        m = result.automaton
        return {
            "states": list(m.names),
            "initial": m.names[result.initial],
            "output": [list(row) for row in m.output],
            "transition": [list(row) for row in m.transition],
        }
    return wrap("digit-automaton", run)


@router.command("finite-state", "Whether every translation has a finite automaton (spectral radius of A below 1)", [SYSTEM])
@router.cites("utils.abelian.is_finite_state", "the digit action is finite-state iff the spectral radius of A is below one")
def finite_state_command(args):
    def run():
        return AB.is_finite_state(get_digit_system(args.system).matrix)
    return wrap("finite-state", run)


@router.command("fraction-point", "Point of the digit tile encoded by a finite word",
                [SYSTEM, arg("--word-input", required=True, help="finite word over the digit alphabet")])
@router.cites("utils.abelian.fraction_point", "points of the digit tile, sums of A^k r_k")
def fraction_point_command(args):
    def run():
        ds = get_digit_system(args.system)
        return [str(x) for x in AB.fraction_point(ds, Word.parse(ds.alphabet, args.word_input))]
    return wrap("fraction-point", run)


@router.command("tile-render", "Digit tile: exact interval in dimension 1, PGM raster in dimension 2",
                [SYSTEM,
                 arg("--depth", type=int, required=True, help="digit expansion length"),
                 arg("--resolution", type=int, default=256)])
@router.cites("utils.abelian.render_tile", "self-affine digit tiles; the twin dragon for A = (1 + i)^-1")
def tile_render_command(args):
    def run():
        ds = get_digit_system(args.system)
        tile = AB.render_tile(ds, args.depth, args.resolution)
        if isinstance(tile, AB.TileInterval):
            if args.output_format == "text":
                return AB.interval_text(tile)
            return {"low": str(tile.low), "high": str(tile.high), "points": tile.points}
        if args.output_format == "pgm":
            return AB.to_pgm(tile)
        return {"resolution": args.resolution, "filled": tile.filled, "box": list(tile.box)}
    return wrap("tile-render", run)


@router.command("abelian-equiv", "Asymptotic equivalence of left-infinite words for a digit system",
                [SYSTEM,
                 arg("--left", required=True, help="left-infinite word (TAIL)SUFFIX"),
                 arg("--right", required=True, help="left-infinite word (TAIL)SUFFIX")])
@router.cites("utils.abelian.abelian_asymptotic_eq", "the limit space of a digit system is the torus R^n / Z^n")
def abelian_equiv_command(args):
    """Equivalent iff the exact values sum A^k r_{x_k} differ by an integer vector."""
    def run():
        ds = get_digit_system(args.system)
        left = LeftWord.parse(ds.alphabet, args.left)
        right = LeftWord.parse(ds.alphabet, args.right)
        return AB.abelian_asymptotic_eq(ds, left, right)
    return wrap("abelian-equiv", run)


@router.command("faithfulness", "First level on which each basis translation acts nontrivially",
                [SYSTEM, arg("--depth", type=int, default=10)])
@router.cites("utils.abelian.faithfulness_levels", "faithfulness of self-similar actions of Z^n")
def faithfulness_command(args):
    def run():
        report = AB.faithfulness_levels(get_digit_system(args.system), args.depth)
        return {str(axis): level for axis, level in report.items()}
    return wrap("faithfulness", run)
