import pytest

from selfsim.catalog import GROUPS, chebyshev_text, list_entries, lookup, lookup_digits, lookup_group
from selfsim.exceptions import InvalidDefinition, UnknownEntry
from selfsim.utils import groups as G
from selfsim.utils.dsl import parse_group, render_group


def test_grigorchuk_entry(grigorchuk):
    assert grigorchuk.generators == ("a", "b", "c", "d")
    assert grigorchuk.degree == 2


def test_basilica_recursion(img_basilica):
    # a = (b, 1) sigma, b = (a, 1)
    assert img_basilica.permutations == ((1, 0), (0, 1))
    assert img_basilica.restrictions == (((1,), ()), ((0,), ()))


def test_unknown_entry():
    with pytest.raises(UnknownEntry):
        lookup("nonexistent")
    with pytest.raises(UnknownEntry):
        lookup_group("dyadic")
    with pytest.raises(UnknownEntry):
        lookup_digits("grigorchuk")


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_groups_survive_rendering(name):
    group = lookup_group(name)
    assert parse_group(render_group(group)) == group


def test_every_entry_renders():
    entries = list_entries()
    assert [e.name for e in entries] == sorted(e.name for e in entries)
    assert {e.kind for e in entries} == {"group", "digits", "rules"}
    for entry in entries:
        assert entry.render().endswith("\n")


def test_recorded_facts():
    for entry in list_entries():
        if entry.kind != "group" or "level_orders" not in entry.facts:
            continue
        for n, expected in entry.facts["level_orders"].items():
            assert G.level_quotient_order(entry.payload, n) == expected


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_chebyshev_generators_are_involutions(d):
    group = parse_group(chebyshev_text(d))
    for g in group.generators:
        assert G.is_trivial(G.parse_element(group, g + "^2"))


def test_chebyshev_2_is_z2_minus_2():
    cheb = lookup_group("chebyshev_2")
    other = lookup_group("img_z2_minus_2")
    assert cheb.permutations == other.permutations
    assert cheb.restrictions == other.restrictions


def test_comments_are_kept_as_notes():
    group = parse_group("# a note\ngroup t alphabet 2\na = perm(0 1) [1, 1]\n")
    assert group.notes == "a note"
    assert render_group(group).startswith("# a note\n")


@pytest.mark.parametrize("text", [
    "",
    "group g alphabet 2\na = perm(0 1) [1]\n",
    "group g alphabet 2\na = perm(0 5) [1, 1]\n",
    "group g alphabet 2\na = perm(0 1) [1, z]\n",
    "grp g alphabet 2\n",
])
def test_bad_definitions(text):
    with pytest.raises(InvalidDefinition):
        parse_group(text)
