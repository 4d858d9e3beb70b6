from itertools import product

import pytest
from hypothesis import given, strategies as st

from selfsim.catalog import lookup_rules
from selfsim.exceptions import InvalidDefinition, OutOfDomain, UsageError
from selfsim.utils import invsemi as I
from selfsim.utils.words import OmegaWord, is_admissible


def omega(table, text):
    return OmegaWord.parse(table.alphabet, text)


def test_fibonacci_a_adds_one(fibonacci):
    assert I.apply_map(fibonacci, "a", omega(fibonacci, "0100(0)")) == omega(fibonacci, "0010(0)")
    assert I.apply_map(fibonacci, "a", omega(fibonacci, "(0)")) == omega(fibonacci, "1(0)")


def test_fibonacci_a_on_periodic_word(fibonacci):
    assert I.apply_map(fibonacci, "a", omega(fibonacci, "(01)")) == omega(fibonacci, "(0)")


def test_fibonacci_b_needs_a_leading_one(fibonacci):
    with pytest.raises(OutOfDomain):
        I.apply_map(fibonacci, "b", omega(fibonacci, "(0)"))
    with pytest.raises(UsageError):
        I.apply_map(fibonacci, "c", omega(fibonacci, "(0)"))


@pytest.mark.parametrize("m, expected", [(0, 1), (1, 2), (4, 5), (7, 8)])
def test_fibonacci_successor(fibonacci, m, expected):
    assert I.fibonacci_successor(fibonacci, m) == expected


@given(st.integers(0, 10_000))
def test_successor_agrees_with_zeckendorf(m):
    assert I.fibonacci_successor(lookup_rules("fibonacci"), m) == m + 1


def test_zeckendorf_digits():
    assert I.zeckendorf_encode(4, 4) == (1, 0, 1, 0)
    assert I.zeckendorf_decode((0, 0, 0, 1)) == 5
    with pytest.raises(UsageError):
        I.zeckendorf_encode(100, 4)
    with pytest.raises(UsageError):
        I.zeckendorf_encode(-1, 4)


@given(st.integers(0, 100_000))
def test_zeckendorf_expansions_have_no_adjacent_ones(m):
    digits = I.zeckendorf_encode(m, 32)
    assert I.zeckendorf_decode(digits) == m
    assert all(not (x and y) for x, y in zip(digits, digits[1:]))


def test_penrose_m_fixes_periodic_word(penrose):
    assert I.apply_map(penrose, "M", omega(penrose, "(ca)")) == omega(penrose, "(ca)")


def test_penrose_l_fixes_periodic_word(penrose):
    assert I.apply_map(penrose, "L", omega(penrose, "(ca)")) == omega(penrose, "(ca)")


@pytest.mark.parametrize("name", ["S", "L", "M"])
def test_penrose_involutions(penrose, name):
    assert I.involution_check(penrose, name, depth=6)


def test_apollonian_reflections(apollonian):
    assert I.apply_map(apollonian, "g1", omega(apollonian, "12(34)")) == omega(apollonian, "2(34)")
    assert I.apply_map(apollonian, "g1", omega(apollonian, "2(34)")) == omega(apollonian, "12(34)")


@pytest.mark.parametrize("name", ["g1", "g2"])
def test_apollonian_involutions(apollonian, name):
    assert I.involution_check(apollonian, name, depth=4, tail_period=2)


def test_images_stay_admissible(apollonian):
    image = I.apply_map(apollonian, "g3", omega(apollonian, "1(24)"))
    assert is_admissible(apollonian.sft, image)


def test_rule_table_round_trip(penrose, fibonacci):
    for table in (penrose, fibonacci):
        assert I.parse_rule_table(I.render_rule_table(table)) == table


def test_ambiguous_table_is_rejected():
    text = "rules broken letters 01\na: 0 -> 1 -\na: 0[0] -> 0 -\na: 1 -> 0 -\n"
    with pytest.raises(InvalidDefinition):
        I.checked(I.parse_rule_table(text))


def test_malformed_tables():
    with pytest.raises(InvalidDefinition):
        I.parse_rule_table("table x letters 01\n")
    with pytest.raises(InvalidDefinition):
        I.parse_rule_table("rules x letters 01\na: 0 => 1 -\n")
    with pytest.raises(InvalidDefinition):
        I.parse_rule_table("rules x letters 01\na: 0 -> 1 z\n")


def test_admissible_word_counts(fibonacci):
    # Fibonacci numbers
    assert [len(I.admissible_words(fibonacci.sft, n)) for n in range(1, 7)] == [2, 3, 5, 8, 13, 21]


def test_apollonian_apply(apollonian):
    w = omega(apollonian, "3(12)")
    assert I.apollonian_apply(apollonian, 2, w) == omega(apollonian, "(12)")
    assert I.apollonian_apply(apollonian, 3, w) == omega(apollonian, "43(12)")
    with pytest.raises(UsageError):
        I.apollonian_apply(apollonian, 0, omega(apollonian, "11(23)"))


@pytest.mark.parametrize("name", ["fibonacci", "penrose", "apollonian"])
def test_maps_preserve_admissibility(name):
    table = lookup_rules(name)
    a = table.alphabet
    tails = [t for p in (1, 2) for t in product(range(a.size), repeat=p)]
    checked_words = 0
    for prefix in I.admissible_words(table.sft, 4):
        for tail in tails:
            w = OmegaWord(a, prefix, tail)
            if not is_admissible(table.sft, w):
                continue
            for m in table.map_names:
                try:
                    image = I.apply_map(table, m, w)
                except OutOfDomain:
                    continue
                checked_words += 1
                assert is_admissible(table.sft, image), f"{m}: {w} -> {image}"
    assert checked_words > 0
