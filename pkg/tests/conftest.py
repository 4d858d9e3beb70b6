import pytest

from selfsim.catalog import lookup_digits, lookup_group, lookup_rules
from selfsim.utils.dsl import parse_group


@pytest.fixture
def grigorchuk():
    return lookup_group("grigorchuk")


@pytest.fixture
def adding_machine():
    return lookup_group("adding_machine")


@pytest.fixture
def lamplighter():
    return lookup_group("lamplighter")


@pytest.fixture
def fabrykowski_gupta():
    return lookup_group("fabrykowski_gupta")


@pytest.fixture
def img_basilica():
    # z^2 - 1
    return lookup_group("img_z2_minus_1")


@pytest.fixture
def trivial_group():
    return parse_group("group trivial alphabet 2\ne = perm() [e, e]\n")


@pytest.fixture
def flip_group():
    # every restriction of a is a itself
    return parse_group("group flip alphabet 2\na = perm(0 1) [a, a]\n")


@pytest.fixture
def dyadic():
    return lookup_digits("dyadic")


@pytest.fixture
def dragon():
    return lookup_digits("dragon")


@pytest.fixture
def fibonacci():
    return lookup_rules("fibonacci")


@pytest.fixture
def penrose():
    return lookup_rules("penrose")


@pytest.fixture
def apollonian():
    return lookup_rules("apollonian")
