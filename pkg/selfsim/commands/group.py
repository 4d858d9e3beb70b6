from fractions import Fraction

from selfsim.commands import GROUP, LEVEL, CommandRouter, arg, wrap
from selfsim.dependencies import get_group
from selfsim.exceptions import UsageError
from selfsim.models import HausdorffReport
from selfsim.utils import groups as G
from selfsim.utils import mealy
from selfsim.utils.groups import Unbounded
from selfsim.utils.permgroup import format_cycles
from selfsim.utils.words import OmegaWord, Word

router = CommandRouter()

ELEMENT = arg("--element", required=True, help="group word, ' marks an inverse, 1 is the identity")


@router.command("act", "Image of a finite word under a group element",
                [GROUP, ELEMENT, arg("--word-input", required=True, help="finite word over the alphabet")],
                default_format="text")
@router.cites("utils.groups.act", "wreath recursion (xw)^g = x^g w^(g|x)")
def act_command(args):
    """Apply an element to a finite word via its minimal Mealy automaton."""
    def run():
        group = get_group(args.group)
        e = G.parse_element(group, args.element)
        return str(G.act(e, Word.parse(group.alphabet, args.word_input)))
    return wrap("act", run)


@router.command("act-omega", "Image of an eventually periodic word PRE(PERIOD)",
                [GROUP, ELEMENT, arg("--point", required=True, help="infinite word PRE(PERIOD)")],
                default_format="text")
@router.cites("utils.groups.act_omega", "action of an automaton group on the boundary X^w of the tree")
def act_omega_command(args):
    def run():
        group = get_group(args.group)
        e = G.parse_element(group, args.element)
        return str(G.act_omega(e, OmegaWord.parse(group.alphabet, args.point)))
    return wrap("act-omega", run)


@router.command("restrict", "Section g|_v of an element at a vertex",
                [GROUP, ELEMENT, arg("--vertex", required=True, help="finite word v")],
                default_format="text")
@router.cites("utils.groups.restriction", "restriction g|_v defined by (vw)^g = v^g w^(g|_v)")
def restrict_command(args):
    """Restriction through the wreath recursion, (gh)|_x = g|_x h|_{x^g}."""
    def run():
        group = get_group(args.group)
        e = G.parse_element(group, args.element)
        return str(G.restriction(e, group.alphabet.parse(args.vertex)))
    return wrap("restrict", run)


@router.command("is-trivial", "Word problem: does the element act as the identity",
                [GROUP, arg("--word", required=True, help="group word to test")])
@router.cites("utils.groups.is_trivial", "word problem for automaton groups; (ad)^4 = 1 in the Grigorchuk group")
def is_trivial_command(args):
    """Decided by minimizing the element automaton and checking that no reachable state moves a letter."""
    def run():
        group = get_group(args.group)
        return G.is_trivial(G.parse_element(group, args.word))
    return wrap("is-trivial", run)


@router.command("order", "Order of an element, searched up to --cap", [GROUP, ELEMENT])
@router.cites("utils.groups.order", "torsion of the Grigorchuk group; a, b, c, d have order 2")
def order_command(args):
    def run():
        group = get_group(args.group)
        result = G.order(G.parse_element(group, args.element), args.cap)
        if isinstance(result, Unbounded):
            return {"order": None, "unbounded_below": result.cap}
        return {"order": result}
    return wrap("order", run)


@router.command("level-action", "Permutation induced on X^n, in cycle notation on word indices",
                [GROUP, ELEMENT, LEVEL])
@router.cites("utils.groups.act_level", "action of G on the level X^n by permutations")
def level_action_command(args):
    def run():
        group = get_group(args.group)
        perm = G.act_level(G.parse_element(group, args.element), args.level, args.max_level)
        names = [group.alphabet.format(w) for w in group.alphabet.words(args.level)]
        return {"cycles": format_cycles(perm), "images": {names[i]: names[j] for i, j in enumerate(perm)}}
    return wrap("level-action", run)


@router.command("level-order", "|G / St_G(n)| by Schreier-Sims on the level-n action", [GROUP, LEVEL])
@router.cites("utils.groups.level_quotient_order", "|G/St_G(n)| = 2^(5 * 2^(n-3) + 2) for the Grigorchuk group, n >= 3")
def level_order_command(args):
    def run():
        return {"level": args.level, "order": G.level_quotient_order(get_group(args.group), args.level, args.max_level)}
    return wrap("level-order", run)


@router.command("hausdorff", "Hausdorff dimension estimate log|G/St(n)| / log|Aut/St(n)|", [GROUP, LEVEL])
@router.cites("utils.groups.hausdorff_estimate", "Hausdorff dimension of the closure in Aut X*, 5/8 for the Grigorchuk group")
def hausdorff_command(args):
    def run():
        group = get_group(args.group)
        size = G.level_quotient_order(group, args.level, args.max_level)
        value = G.hausdorff_estimate(group, args.level, quotient_order=size)
        exact = str(value) if isinstance(value, Fraction) else None
        return HausdorffReport(group=group.name, level=args.level, quotient_order=size,
                               exact=exact, value=float(value)).model_dump()
    return wrap("hausdorff", run)


@router.command("portrait", "Root permutations of all sections down to --depth",
                [GROUP, ELEMENT, arg("--depth", type=int, required=True)])
@router.cites("utils.groups.portrait", "portrait of a tree automorphism by root permutations of its sections")
def portrait_command(args):
    def run():
        group = get_group(args.group)
        p = G.portrait(G.parse_element(group, args.element), args.depth)
        a = group.alphabet
        return {a.format(v) or "root": format_cycles(perm) for v, perm in sorted(p.labels.items(), key=lambda kv: (len(kv[0]), kv[0]))}
    return wrap("portrait", run)


@router.command("verify-relators", "Check relators stay trivial under iterated substitution",
                [GROUP,
                 arg("--relator", action="append", required=True, help="relator word, repeatable"),
                 arg("--rule", action="append", default=[], help="substitution NAME=WORD, repeatable"),
                 arg("--iterations", type=int, default=0)])
@router.cites("utils.groups.verify_substitution_relators", "L-presentation of the Grigorchuk group by the substitution a -> aca, b -> d, c -> b, d -> c")
def relators_command(args):
    def run():
        group = get_group(args.group)
        rules = {}
        for item in args.rule:
            name, sep, word = item.partition("=")
            if not sep:
                raise UsageError(f"--rule expects NAME=WORD, got {item!r}", exit_code=2)
            rules[name.strip()] = G.parse_word(group, word)
        relators = [G.parse_word(group, r) for r in args.relator]
        return G.verify_substitution_relators(group, relators, rules, args.iterations)
    return wrap("verify-relators", run)


@router.command("moore", "Moore diagram of the generating automaton", [GROUP], default_format="dot")
@router.cites("utils.mealy.to_dot", "Moore diagram of a Mealy automaton")
def moore_command(args):
    def run():
        group = get_group(args.group)
        m, _ = G.generator_automaton(group)
        return mealy.to_dot(m, group.name)
    return wrap("moore", run)


@router.command("group-growth", "Cayley ball sizes |B(r)| of the group", [GROUP, arg("--radius", type=int, required=True)])
@router.cites("utils.groups.group_growth", "growth of finitely generated groups; intermediate growth of the Grigorchuk group")
def group_growth_command(args):
    def run():
        return {"sizes": G.group_growth(get_group(args.group), args.radius, args.cap)}
    return wrap("group-growth", run)

