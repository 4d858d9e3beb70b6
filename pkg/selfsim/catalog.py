from __future__ import annotations

from functools import lru_cache
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict

from selfsim.exceptions import UnknownEntry
from selfsim.utils.abelian import DigitSystem
from selfsim.utils.dsl import parse_group, render_group
from selfsim.utils.groups import GroupDef
from selfsim.utils.invsemi import RuleTable, checked, parse_rule_table, render_rule_table


class CatalogEntry(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    name: str
    kind: Literal["group", "digits", "rules"]
    payload: Any
    provenance: str
    facts: dict[str, Any] = {}

    def render(self) -> str:
        if self.kind == "group":
            return render_group(self.payload)
        if self.kind == "rules":
            return render_rule_table(self.payload)
        return self.payload.to_config().model_dump_json(indent=2) + "\n"


GROUPS = {
    "adding_machine": ("""
group adding_machine alphabet 2
a = perm(0 1) [1, a]
""", "binary odometer", {"nucleus_size": 3, "level_orders": {3: 8}}),
    "dihedral": ("""
group dihedral alphabet 2
a = perm(0 1) [1, 1]
b = perm() [a, b]
""", "infinite dihedral group", {}),
    "grigorchuk": ("""
group grigorchuk alphabet 2
a = perm(0 1) [1, 1]
b = perm() [a, c]
c = perm() [a, d]
d = perm() [1, b]
""", "first Grigorchuk group", {"nucleus_size": 5, "level_orders": {3: 128, 4: 4096}}),
    "lamplighter": ("""
group lamplighter alphabet 2
a = perm(0 1) [b, a]
b = perm() [b, a]
""", "lamplighter group, not contracting", {"contracting": False}),
    "fabrykowski_gupta": ("""
group fabrykowski_gupta alphabet 3
a = perm(0 1 2) [1, 1, 1]
s = perm() [a, 1, s]
""", "Fabrykowski-Gupta group", {}),
    "sierpinski_gasket": ("""
group sierpinski_gasket alphabet 3
b0 = perm(1 2) [b0, 1, 1]
b1 = perm(0 2) [1, b1, 1]
b2 = perm(0 1) [1, 1, b2]
""", "Hanoi-type group of the Sierpinski gasket", {}),
    "img_z2": ("""
group img_z2 alphabet 2
t = perm(0 1) [1, t]
""", "iterated monodromy group of z^2", {}),
    "img_z_minus2": ("""
group img_z_minus2 alphabet 2
m = perm(0 1) [1, m']
""", "iterated monodromy group of z^-2", {}),
    "img_z2_minus_1": ("""
group img_z2_minus_1 alphabet 2
a = perm(0 1) [b, 1]
b = perm() [a, 1]
""", "iterated monodromy group of z^2 - 1", {}),
    "img_z2_minus_1_over_z2": ("""
group img_z2_minus_1_over_z2 alphabet 2
a = perm() [1, b]
b = perm(0 1) [a', 1]
""", "iterated monodromy group of (z^2 - 1)/z^2", {}),
    "img_z2_minus_2": ("""
group img_z2_minus_2 alphabet 2
a = perm(0 1) [1, 1]
b = perm() [a, b]
""", "iterated monodromy group of z^2 - 2", {}),
    "img_z2_plus_c_real": ("""
group img_z2_plus_c_real alphabet 2
a = perm(0 1) [1, b]
b = perm() [1, c]
c = perm() [a, 1]
""", "iterated monodromy group of z^2 + c, real period-3 c", {}),
    "img_z2_plus_c_complex": ("""
group img_z2_plus_c_complex alphabet 2
a = perm(0 1) [1, b]
b = perm() [c, 1]
c = perm() [a, 1]
""", "iterated monodromy group of z^2 + c, non-real period-3 c (rabbit)", {}),
    "img_z2_minus_2_over_z2": ("""
group img_z2_minus_2_over_z2 alphabet 2
a = perm() [b, a]
b = perm(0 1) [b', a']
""", "iterated monodromy group of (z^2 - 2)/z^2", {}),
    "img_z2_minus_phi2_over_z2": ("""
group img_z2_minus_phi2_over_z2 alphabet 2
a = perm() [b, 1]
b = perm() [1, c]
c = perm(0 1) [a', b']
""", "iterated monodromy group of (z^2 - phi^2)/z^2, phi = (1 + sqrt 5)/2", {}),
    "img_z2_minus_phibar2_over_z2": ("""
group img_z2_minus_phibar2_over_z2 alphabet 2
a = perm() [1, b]
b = perm() [1, c]
c = perm(0 1) [a', 1]
""", "iterated monodromy group of (z^2 - phi^2)/z^2, phi = (1 - sqrt 5)/2", {}),
    "img_z2_minus_1_over_z2_plus_1": ("""
group img_z2_minus_1_over_z2_plus_1 alphabet 2
a = perm(0 1) [1, b]
b = perm() [a, a']
""", "iterated monodromy group of (z^2 - 1)/(z^2 + 1)", {}),
    "img_z2_minus_1_over_z2_minus_omega": ("""
group img_z2_minus_1_over_z2_minus_omega alphabet 2
a = perm(0 1) [1, b]
b = perm() [c, 1]
c = perm(0 1) [c'b', a']
""", "iterated monodromy group of (z^2 - 1)/(z^2 - omega), omega a cube root of unity", {}),
    "img_z2_plus_i": ("""
group img_z2_plus_i alphabet 2
a = perm(0 1) [1, 1]
b = perm() [a, c]
c = perm() [b, 1]
""", "iterated monodromy group of z^2 + i", {}),
}


def chebyshev_text(d: int) -> str:
    """Wreath recursion of the iterated monodromy group of the degree-d Chebyshev polynomial."""
    ones = ["1"] * d
    if d % 2:
        a_perm = "".join(f"({i} {i + 1})" for i in range(1, d - 1, 2))
        b_perm = "".join(f"({i} {i + 1})" for i in range(0, d - 2, 2))
        a_rest = ["a"] + ones[1:]
        b_rest = ones[:-1] + ["b"]
    else:
        a_perm = "".join(f"({i} {i + 1})" for i in range(0, d - 1, 2))
        b_perm = "".join(f"({i} {i + 1})" for i in range(1, d - 2, 2))
        a_rest = ones
        b_rest = ["a"] + ones[1:-1] + ["b"]
    return (
        f"group chebyshev_{d} alphabet {d}\n"
        f"a = perm{a_perm or '()'} [{', '.join(a_rest)}]\n"
        f"b = perm{b_perm or '()'} [{', '.join(b_rest)}]\n"
    )


for _d in range(2, 7):
    GROUPS[f"chebyshev_{_d}"] = (chebyshev_text(_d), f"iterated monodromy group of the Chebyshev polynomial of degree {_d}", {})


DIGIT_SYSTEMS = {
    "dyadic": (DigitSystem((("1/2",),), ((0,), (1,))), "binary expansion, A = 1/2, R = {0, 1}"),
    "dragon": (
        DigitSystem((("1/2", "-1/2"), ("1/2", "1/2")), ((0, 0), (1, 0))),
        "twin dragon, A = (1 + i)^-1 as a real matrix",
    ),
}


RULE_TABLES = {
    "fibonacci": ("""
rules fibonacci letters 01
forbid 11
a: 0[0] -> 1 -
a: 0[1] -> 0 b
b: 1 -> 0 a
""", "Fibonacci (Zeckendorf) odometer"),
    "penrose": ("""
rules penrose letters abc
forbid ba
S: a -> c -
S: b -> b M
S: c -> a -
M: a -> a L
M: b -> c -
M: c[a] -> c M
M: c[b] -> b -
M: c[c] -> b -
L: a[a] -> b S
L: a[b] -> a M
L: a[c] -> a M
L: b[b] -> b S
L: b[c] -> a S
L: c -> c L
""", "substitution rules of Penrose tilings"),
    "apollonian": ("""
rules apollonian letters 1234
forbid 11
forbid 22
forbid 33
forbid 44
g1: 12 -> 2 -
g1: 13 -> 3 -
g1: 14 -> 4 -
g1: 2 -> 12 -
g1: 3 -> 13 -
g1: 4 -> 14 -
g2: 21 -> 1 -
g2: 23 -> 3 -
g2: 24 -> 4 -
g2: 1 -> 21 -
g2: 3 -> 23 -
g2: 4 -> 24 -
g3: 31 -> 1 -
g3: 32 -> 2 -
g3: 34 -> 4 -
g3: 1 -> 31 -
g3: 2 -> 32 -
g3: 4 -> 34 -
g4: 41 -> 1 -
g4: 42 -> 2 -
g4: 43 -> 3 -
g4: 1 -> 41 -
g4: 2 -> 42 -
g4: 3 -> 43 -
""", "Apollonian gasket reflections acting on reduced words"),
}


@lru_cache(maxsize=None)
def lookup(name: str) -> CatalogEntry:
    if name in GROUPS:
        text, provenance, facts = GROUPS[name]
        return CatalogEntry(name=name, kind="group", payload=parse_group(text), provenance=provenance, facts=facts)
    if name in DIGIT_SYSTEMS:
        ds, provenance = DIGIT_SYSTEMS[name]
        return CatalogEntry(name=name, kind="digits", payload=ds, provenance=provenance)
    if name in RULE_TABLES:
        text, provenance = RULE_TABLES[name]
        return CatalogEntry(name=name, kind="rules", payload=checked(parse_rule_table(text)), provenance=provenance)
    raise UnknownEntry(f"no catalog entry named {name!r}")


def _typed(name: str, kind: str):
    entry = lookup(name)
    if entry.kind != kind:
        raise UnknownEntry(f"catalog entry {name!r} is a {entry.kind}, not a {kind}")
    return entry.payload


def lookup_group(name: str) -> GroupDef:
    return _typed(name, "group")


def lookup_digits(name: str) -> DigitSystem:
    return _typed(name, "digits")


def lookup_rules(name: str) -> RuleTable:
    return _typed(name, "rules")


def list_entries() -> list[CatalogEntry]:
    return [lookup(name) for name in sorted([*GROUPS, *DIGIT_SYSTEMS, *RULE_TABLES])]
