import pytest

from selfsim.exceptions import InvalidDefinition, NotInvertible
from selfsim.utils import mealy
from selfsim.utils.groups import generator_automaton, letter_automaton
from selfsim.utils.mealy import InitialAutomaton, MealyAutomaton
from selfsim.utils.words import Alphabet, OmegaWord, Word

BINARY = Alphabet(2)

# state 0: adding machine a = (1, a)σ, state 1: identity
ODOMETER = MealyAutomaton(BINARY, ((1, 0), (0, 1)), ((1, 0), (1, 1)), ("a", "1"))
A = InitialAutomaton(ODOMETER, 0)


def word(text):
    return Word.parse(BINARY, text)


def test_act():
    assert str(mealy.act(A, word("000"))) == "100"
    assert str(mealy.act(A, word("111"))) == "000"
    assert str(mealy.act(InitialAutomaton(ODOMETER, 1), word("0110"))) == "0110"


def test_act_omega():
    assert str(mealy.act_omega(A, OmegaWord.parse(BINARY, "(1)"))) == "(0)"
    assert str(mealy.act_omega(A, OmegaWord.parse(BINARY, "0(1)"))) == "(1)"
    assert str(mealy.act_omega(A, OmegaWord.parse(BINARY, "1(0)"))) == "01(0)"


def test_compose_and_invert():
    twice = mealy.compose(A, A)
    assert str(mealy.act(twice, word("00"))) == "01"
    inverse = mealy.invert(A)
    assert str(mealy.act(inverse, word("100"))) == "000"
    product = mealy.compose(A, inverse)
    assert mealy.acts_trivially(product.automaton, product.initial)


def test_invertibility():
    assert mealy.is_invertible(ODOMETER)
    constant = MealyAutomaton(BINARY, ((0, 0),), ((0, 0),))
    assert not mealy.is_invertible(constant)
    with pytest.raises(NotInvertible):
        mealy.invert(InitialAutomaton(constant, 0))


def test_lamplighter_is_invertible(lamplighter):
    m, _ = generator_automaton(lamplighter)
    assert mealy.is_invertible(m)


def test_acts_trivially():
    assert mealy.acts_trivially(ODOMETER, 1)
    assert not mealy.acts_trivially(ODOMETER, 0)


def test_minimize_merges_equivalent_states():
    # states 1 and 2 are both the identity
    m = MealyAutomaton(BINARY, ((1, 0), (0, 1), (0, 1)), ((1, 0), (2, 1), (1, 2)))
    reduced = mealy.minimize(m)
    assert reduced.num_states == 2
    assert mealy.minimize_initial(InitialAutomaton(m, 0)) == mealy.minimize_initial(A)


def test_minimize_initial_drops_unreachable_states():
    canonical = mealy.minimize_initial(InitialAutomaton(ODOMETER, 1))
    assert canonical == mealy.identity_automaton(BINARY)


def test_bad_tables_are_rejected():
    with pytest.raises(InvalidDefinition):
        MealyAutomaton(BINARY, ((1, 0),), ((0, 3),))
    with pytest.raises(InvalidDefinition):
        MealyAutomaton(BINARY, ((1, 0),), ((0, 0),), ("a", "b"))


def test_moore_diagram_dot(adding_machine):
    m, _ = generator_automaton(adding_machine)
    expected = """
digraph "adding_machine" {
  0 [label="1"];
  1 [label="a"];
  2 [label="a'"];
  0 -> 0 [label="0|0"];
  0 -> 0 [label="1|1"];
  1 -> 0 [label="0|1"];
  1 -> 1 [label="1|0"];
  2 -> 2 [label="0|1"];
  2 -> 0 [label="1|0"];
}
"""
    assert mealy.to_dot(m, "adding_machine").strip() == expected.strip()


def test_letter_automaton_matches_odometer(adding_machine):
    assert mealy.minimize_initial(letter_automaton(adding_machine, 0)) == mealy.minimize_initial(A)
