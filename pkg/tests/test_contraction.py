import pytest
from hypothesis import given, settings, strategies as st

from selfsim.catalog import lookup_digits, lookup_group
from selfsim.exceptions import SizeBoundExceeded, UsageError
from selfsim.utils import abelian as AB
from selfsim.utils import contraction as C
from selfsim.utils.groups import Element, parse_element
from selfsim.utils.schreier import ball_growth, level_schreier

bits = st.lists(st.integers(0, 1), min_size=1, max_size=4).map(lambda xs: "".join(map(str, xs)))
left_words = st.tuples(bits, bits | st.just("")).map(lambda p: f"({p[0]}){p[1]}")


def names(elements):
    return sorted(str(e) for e in elements)


def left(group, text):
    return C.LeftWord.parse(group.alphabet, text)


def test_restriction_closure(adding_machine, grigorchuk):
    assert names(C.restriction_closure(adding_machine, [parse_element(adding_machine, "a")])) == ["1", "a"]
    seed = [parse_element(grigorchuk, g) for g in "abcd"]
    assert names(C.restriction_closure(grigorchuk, seed)) == ["1", "a", "b", "c", "d"]
    assert names(C.restriction_closure(grigorchuk, [Element(grigorchuk)])) == ["1"]


def test_nucleus_of_adding_machine(adding_machine):
    n = C.nucleus(adding_machine)
    assert names(n.elements) == ["1", "a", "a'"]
    assert parse_element(adding_machine, "a'") in n
    assert parse_element(adding_machine, "a^2") not in n


def test_nucleus_of_grigorchuk(grigorchuk):
    n = C.nucleus(grigorchuk)
    assert len(n) == 5
    assert names(n.elements) == ["1", "a", "b", "c", "d"]
    # products reduce to representatives of the same elements
    assert parse_element(grigorchuk, "bc") in n


def test_lamplighter_is_not_contracting_within_cap(lamplighter):
    assert isinstance(C.nucleus(lamplighter, 50), C.Exceeded)
    assert isinstance(C.is_contracting(lamplighter, 50), C.Inconclusive)


def test_fabrykowski_gupta_is_contracting(fabrykowski_gupta):
    result = C.is_contracting(fabrykowski_gupta)
    assert isinstance(result, C.Contracting)
    assert parse_element(fabrykowski_gupta, "s") in result.nucleus


def test_trivial_group_nucleus(trivial_group):
    result = C.is_contracting(trivial_group)
    assert isinstance(result, C.Contracting)
    assert len(result.nucleus) == 1


def test_open_set_condition(adding_machine, grigorchuk, flip_group):
    assert C.open_set_condition(C.nucleus(adding_machine))
    assert C.open_set_condition(C.nucleus(grigorchuk))
    assert not C.open_set_condition(C.nucleus(flip_group))


def test_nucleus_as_wreath_recursion(grigorchuk):
    text = C.nucleus(grigorchuk).to_dsl()
    assert text.splitlines()[0] == "# nucleus of grigorchuk: 5 elements"
    assert "b = perm() [a, c]" in text


def test_contraction_estimates(grigorchuk, adding_machine):
    assert 0 < C.contraction_estimate(grigorchuk, depth=4, seed=7) <= 0.85
    assert 0 < C.contraction_estimate(adding_machine, depth=6, seed=7) <= 0.75


def test_contraction_estimate_is_reproducible(grigorchuk):
    assert C.contraction_estimate(grigorchuk, depth=3, seed=3) == C.contraction_estimate(grigorchuk, depth=3, seed=3)


def test_contraction_estimate_of_trivial_group(trivial_group):
    assert C.contraction_estimate(trivial_group, depth=2) == 0


def test_left_word_letters(adding_machine):
    w = left(adding_machine, "(01)10")
    assert [w.letter(k) for k in range(1, 6)] == [0, 1, 1, 0, 1]
    with pytest.raises(UsageError):
        left(adding_machine, "0101")


def test_adding_machine_asymptotic_equivalence(adding_machine):
    n = C.nucleus(adding_machine)
    w = "0110"
    assert C.asymptotically_equivalent(n, left(adding_machine, "(0)1" + w), left(adding_machine, "(1)0" + w))
    assert not C.asymptotically_equivalent(n, left(adding_machine, "(0)"), left(adding_machine, "(01)"))
    assert C.asymptotically_equivalent(n, left(adding_machine, "(01)1"), left(adding_machine, "(01)1"))


def test_grigorchuk_asymptotic_equivalence(grigorchuk):
    n = C.nucleus(grigorchuk)
    w = "10"
    assert C.asymptotically_equivalent(n, left(grigorchuk, "(1)01" + w), left(grigorchuk, "(1)00" + w))
    assert not C.asymptotically_equivalent(n, left(grigorchuk, "(1)"), left(grigorchuk, "(0)"))


def test_tile_graph_of_grigorchuk_is_a_path(grigorchuk):
    graph = C.tile_graph(C.nucleus(grigorchuk), 3)
    assert graph.num_vertices == 8
    assert len(graph.edges) == 7
    degrees = sorted(graph.degree(v) for v in range(8))
    assert degrees == [1, 1, 2, 2, 2, 2, 2, 2]
    end = next(v for v in range(8) if graph.degree(v) == 1)
    assert ball_growth(graph, end, 7).sizes == tuple(range(1, 9))


@pytest.mark.parametrize("level", [3, 4, 5])
def test_tile_graph_of_adding_machine_is_a_cycle(adding_machine, level):
    graph = C.tile_graph(C.nucleus(adding_machine), level)
    size = 2 ** level
    assert len(graph.edges) == size
    assert all(graph.degree(v) == 2 for v in range(size))
    assert ball_growth(graph, 0, 2).sizes == (1, 3, 5)


def test_tile_graph_level_zero(grigorchuk):
    graph = C.tile_graph(C.nucleus(grigorchuk), 0)
    assert graph.num_vertices == 1
    assert graph.edges == ()


def test_tile_graph_of_adding_machine_level_two(adding_machine):
    graph = C.tile_graph(C.nucleus(adding_machine), 2)
    assert [(graph.names[s], graph.names[t]) for s, t, _ in graph.edges] == [("00", "10"), ("00", "11"), ("01", "10"), ("01", "11")]


def test_tile_graph_bound(grigorchuk):
    with pytest.raises(SizeBoundExceeded):
        C.tile_graph(C.nucleus(grigorchuk), 4, bound=15)
    assert C.tile_graph(C.nucleus(grigorchuk), 4, bound=16).num_vertices == 16


@pytest.mark.parametrize("name, top", [("grigorchuk", 5), ("fabrykowski_gupta", 4), ("adding_machine", 5)])
def test_tile_graph_is_the_nucleus_schreier_graph(name, top):
    group = lookup_group(name)
    nuc = C.nucleus(group)
    for level in range(top + 1):
        tiles = {(s, t) for s, t, _ in C.tile_graph(nuc, level).edges}
        schreier = {(s, t) for s, t, _ in level_schreier(group, list(nuc.elements), level).simplicial().edges}
        assert tiles == schreier


def test_contraction_estimate_with_nucleus(grigorchuk, adding_machine):
    for group in (grigorchuk, adding_machine):
        plain = C.contraction_estimate(group, depth=3, seed=5)
        reduced = C.contraction_estimate(group, C.nucleus(group), depth=3, seed=5)
        assert 0 < reduced <= plain


def test_contraction_estimate_rejects_a_foreign_nucleus(grigorchuk, adding_machine):
    with pytest.raises(UsageError):
        C.contraction_estimate(grigorchuk, C.nucleus(adding_machine), depth=2)


@given(left_words, left_words)
@settings(max_examples=100, deadline=None)
def test_nucleus_and_series_deciders_agree(left_text, right_text):
    group, ds = lookup_group("adding_machine"), lookup_digits("dyadic")
    nuc = C.nucleus(group)
    by_nucleus = C.asymptotically_equivalent(nuc, C.LeftWord.parse(group.alphabet, left_text), C.LeftWord.parse(group.alphabet, right_text))
    by_series = AB.abelian_asymptotic_eq(ds, C.LeftWord.parse(ds.alphabet, left_text), C.LeftWord.parse(ds.alphabet, right_text))
    assert by_nucleus == by_series


@given(left_words, left_words)
@settings(max_examples=60, deadline=None)
def test_asymptotic_equivalence_is_reflexive_and_symmetric(left_text, right_text):
    group = lookup_group("grigorchuk")
    nuc = C.nucleus(group)
    u, v = C.LeftWord.parse(group.alphabet, left_text), C.LeftWord.parse(group.alphabet, right_text)
    assert C.asymptotically_equivalent(nuc, u, u)
    assert C.asymptotically_equivalent(nuc, u, v) == C.asymptotically_equivalent(nuc, v, u)
