from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from selfsim.config import logger, settings
from selfsim.exceptions import (
    AlphabetMismatch,
    ClosureExceeded,
    InvalidDefinition,
    SizeBoundExceeded,
    UsageError,
)
from selfsim.utils import mealy
from selfsim.utils.mealy import InitialAutomaton, MealyAutomaton
from selfsim.utils.permgroup import inv_perm, perm_group_order
from selfsim.utils.words import Alphabet, OmegaWord, Word

# A letter of a group word is a signed generator index: i for g_i, ~i for its inverse.
GroupWord = tuple[int, ...]


@dataclass(frozen=True)
class GroupDef:
    """Self-similar group given by a wreath recursion g_i = (w_0, ..., w_{d-1}) pi_i."""

    name: str
    alphabet: Alphabet
    generators: tuple[str, ...]
    permutations: tuple[tuple[int, ...], ...]
    restrictions: tuple[tuple[GroupWord, ...], ...]
    notes: str = field(default="", compare=False)

    def __post_init__(self):
        d, k = self.alphabet.size, len(self.generators)
        if k == 0:
            raise InvalidDefinition(f"group {self.name} has no generators")
        if len(set(self.generators)) != k:
            raise InvalidDefinition(f"group {self.name} repeats a generator name")
        if len(self.permutations) != k or len(self.restrictions) != k:
            raise InvalidDefinition(f"group {self.name}: one permutation and restriction list per generator")
        for perm in self.permutations:
            if sorted(perm) != list(range(d)):
                raise InvalidDefinition(f"group {self.name}: {perm} is not a permutation of the alphabet")
        for row in self.restrictions:
            if len(row) != d:
                raise InvalidDefinition(f"group {self.name}: need {d} restrictions per generator")
            for word in row:
                if any(not -k <= s < k for s in word):
                    raise InvalidDefinition(f"group {self.name}: restriction refers to unknown generator")
        object.__setattr__(self, "_inverse_perms", tuple(inv_perm(p) for p in self.permutations))

    @property
    def degree(self) -> int:
        return self.alphabet.size

    def letter_action(self, s: int, x: int) -> int:
        if s >= 0:
            return self.permutations[s][x]
        return self._inverse_perms[~s][x]

    def letter_restriction(self, s: int, x: int) -> GroupWord:
        if s >= 0:
            return self.restrictions[s][x]
        return inverse_word(self.restrictions[~s][self._inverse_perms[~s][x]])

    def letter_name(self, s: int) -> str:
        return self.generators[s] if s >= 0 else self.generators[~s] + "'"


def inverse_word(word: GroupWord) -> GroupWord:
    return tuple(~s for s in reversed(word))


def free_reduce(word) -> GroupWord:
    stack: list[int] = []
    for s in word:
        if stack and stack[-1] == ~s:
            stack.pop()
        else:
            stack.append(s)
    return tuple(stack)


def letter_sort_key(word: GroupWord) -> tuple:
    """Shortlex with g_0 < g_0' < g_1 < ..."""
    return (len(word), tuple(2 * s if s >= 0 else 2 * ~s + 1 for s in word))


@dataclass(frozen=True)
class Element:
    group: GroupDef
    word: GroupWord = ()

    def __post_init__(self):
        object.__setattr__(self, "word", free_reduce(self.word))

    def __mul__(self, other: "Element") -> "Element":
        return Element(self.group, self.word + other.word)

    def inverse(self) -> "Element":
        return Element(self.group, inverse_word(self.word))

    def __str__(self):
        return format_word(self.group, self.word)


# --- word syntax -------------------------------------------------------------

def format_word(group: GroupDef, word: GroupWord) -> str:
    if not word:
        return "1"
    names = [group.letter_name(s) for s in word]
    if all(len(g) == 1 for g in group.generators):
        return "".join(names)
    return " ".join(names)


class _WordParser:
    """term := atom ['^' int]; atom := name "'"* | '1' | '(' expr ')' | '[' expr ',' expr ']'."""

    def __init__(self, group: GroupDef, text: str):
        self.group = group
        self.text = text
        self.pos = 0
        self.names = sorted(enumerate(group.generators), key=lambda item: -len(item[1]))

    def fail(self, message: str):
        raise UsageError(f"bad word {self.text!r} at position {self.pos}: {message}")

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t*.":
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> GroupWord:
        word = self.expr()
        if self.peek():
            self.fail("unexpected character")
        return word

    def expr(self) -> GroupWord:
        word: list[int] = []
        while self.peek() and self.peek() not in ",)]":
            word.extend(self.term())
        return tuple(word)

    def term(self) -> GroupWord:
        atom = self.atom()
        if self.peek() == "^":
            self.pos += 1
            self.skip()
            start = self.pos
            if self.pos < len(self.text) and self.text[self.pos] == "-":
                self.pos += 1
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            try:
                exponent = int(self.text[start:self.pos])
            except ValueError:
                self.fail("exponent expected")
            if exponent < 0:
                atom, exponent = inverse_word(atom), -exponent
            atom = atom * exponent
        return atom

    def atom(self) -> GroupWord:
        c = self.peek()
        if c == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                self.fail("')' expected")
            self.pos += 1
            return inner
        if c == "[":
            self.pos += 1
            left = self.expr()
            if self.peek() != ",":
                self.fail("',' expected")
            self.pos += 1
            right = self.expr()
            if self.peek() != "]":
                self.fail("']' expected")
            self.pos += 1
            return commutator(left, right)
        for index, name in self.names:
            if self.text.startswith(name, self.pos):
                self.pos += len(name)
                letter = index
                while self.pos < len(self.text) and self.text[self.pos] == "'":
                    letter = ~letter
                    self.pos += 1
                return (letter,)
        if c == "1":
            self.pos += 1
            return ()
        self.fail("generator name expected")


def parse_word(group: GroupDef, text: str) -> GroupWord:
    return _WordParser(group, text).parse()


def commutator(x: GroupWord, y: GroupWord) -> GroupWord:
    return inverse_word(x) + inverse_word(y) + x + y


def parse_element(group: GroupDef, text: str) -> Element:
    return Element(group, parse_word(group, text))


# --- automata ------------------------------------------------------------------

def restrict_word(group: GroupDef, word: GroupWord, x: int) -> tuple[int, GroupWord]:
    """(image of letter x, freely reduced restriction of the word at x)."""
    out: list[int] = []
    for s in word:
        out.extend(group.letter_restriction(s, x))
        x = group.letter_action(s, x)
    return x, free_reduce(out)


@lru_cache(maxsize=64)
def generator_automaton(group: GroupDef) -> tuple[MealyAutomaton, dict]:
    """Automaton whose states are the reduced restriction words of the signed generators."""
    d = group.degree
    seeds = [()] + [(s,) for i in range(len(group.generators)) for s in (i, ~i)]
    index = {w: i for i, w in enumerate(dict.fromkeys(seeds))}
    queue = deque(index)
    output, transition = {}, {}
    while queue:
        w = queue.popleft()
        row_out, row_tr = [], []
        for x in range(d):
            y, r = restrict_word(group, w, x)
            if r not in index:
                if len(index) >= settings.CLOSURE_CAP:
                    raise ClosureExceeded(f"generator restrictions of {group.name} exceed {settings.CLOSURE_CAP} states")
                index[r] = len(index)
                queue.append(r)
            row_out.append(y)
            row_tr.append(index[r])
        output[index[w]] = tuple(row_out)
        transition[index[w]] = tuple(row_tr)
    n = len(index)
    names = tuple(format_word(group, w) for w in sorted(index, key=index.get))
    m = MealyAutomaton(group.alphabet, tuple(output[q] for q in range(n)), tuple(transition[q] for q in range(n)), names)
    logger.debug(f"generator automaton of {group.name} has {n} states")
    return m, index


def letter_automaton(group: GroupDef, s: int) -> InitialAutomaton:
    m, index = generator_automaton(group)
    return InitialAutomaton(m, index[(s,)])


@lru_cache(maxsize=4096)
def _word_automaton(group: GroupDef, word: GroupWord) -> InitialAutomaton:
    if not word:
        return mealy.identity_automaton(group.alphabet)
    if len(word) == 1:
        return mealy.minimize_initial(letter_automaton(group, word[0]))
    half = len(word) // 2
    left = _word_automaton(group, word[:half])
    right = _word_automaton(group, word[half:])
    return mealy.minimize_initial(mealy.compose(left, right))


def element_automaton(e: Element) -> InitialAutomaton:
    """Minimal initial automaton of the element; equal results iff the elements are equal."""
    return _word_automaton(e.group, e.word)


def act(e: Element, w: Word) -> Word:
    if w.alphabet != e.group.alphabet:
        raise AlphabetMismatch("word is not over the group alphabet")
    return mealy.act(element_automaton(e), w)


def act_omega(e: Element, w: OmegaWord) -> OmegaWord:
    return mealy.act_omega(element_automaton(e), w)


def restriction(e: Element, v) -> Element:
    """Section g|_v, following (gh)|_x = g|_x h|_{x^g}."""
    letters = v.letters if isinstance(v, Word) else tuple(v)
    word = e.word
    for x in letters:
        if not 0 <= x < e.group.degree:
            raise AlphabetMismatch(f"letter {x} outside the group alphabet")
        _, word = restrict_word(e.group, word, x)
    return Element(e.group, word)


def is_trivial(e: Element) -> bool:
    a = element_automaton(e)
    return mealy.acts_trivially(a.automaton, a.initial)


def equal(e: Element, f: Element) -> bool:
    return element_automaton(e) == element_automaton(f)


@dataclass(frozen=True)
class Unbounded:
    """Order not found below the cap."""

    cap: int


def order(e: Element, cap: int | None = None) -> int | Unbounded:
    cap = cap or settings.ORDER_CAP
    base = element_automaton(e)
    power = mealy.identity_automaton(e.group.alphabet)
    for k in range(1, cap + 1):
        power = mealy.minimize_initial(mealy.compose(power, base))
        if mealy.acts_trivially(power.automaton, power.initial):
            return k
    logger.info(f"no finite order of {e} found up to {cap}")
    return Unbounded(cap)


def _level_perm(m: MealyAutomaton, q: int, n: int, d: int, memo: dict) -> tuple[int, ...]:
    key = (q, n)
    if key in memo:
        return memo[key]
    if n == 0:
        perm = (0,)
    else:
        block = d ** (n - 1)
        image = [0] * (d * block)
        for x in range(d):
            y = m.output[q][x]
            sub = _level_perm(m, m.transition[q][x], n - 1, d, memo)
            for u in range(block):
                image[x * block + u] = y * block + sub[u]
        perm = tuple(image)
    memo[key] = perm
    return perm


def check_level(group: GroupDef, n: int, bound: int | None = None):
    bound = bound or settings.MAX_LEVEL_POINTS
    if n < 0:
        raise UsageError(f"level must be nonnegative, got {n}")
    if group.degree ** n > bound:
        raise SizeBoundExceeded(f"level {n} has {group.degree ** n} vertices, above the bound {bound}")


def act_level(e: Element, n: int, bound: int | None = None) -> tuple[int, ...]:
    """Permutation of X^n, words indexed lexicographically with the first letter most significant."""
    check_level(e.group, n, bound)
    a = element_automaton(e)
    return _level_perm(a.automaton, a.initial, n, e.group.degree, {})


def level_quotient_order(group: GroupDef, n: int, bound: int | None = None) -> int:
    """|G / St_G(n)|."""
    check_level(group, n, bound)
    gens = [act_level(Element(group, (i,)), n, bound) for i in range(len(group.generators))]
    return perm_group_order(gens, group.degree ** n)


def hausdorff_estimate(
    group: GroupDef, n: int, bound: int | None = None, quotient_order: int | None = None
) -> Fraction | float:
    """log|G/St(n)| / log|Aut X*/St(n)|, exact when the quotient order is a power of d!.

    Pass quotient_order when |G/St(n)| is already known.
    """
    if n < 1:
        raise UsageError("Hausdorff estimate needs level >= 1")
    size = quotient_order or level_quotient_order(group, n, bound)
    d = group.degree
    vertices = sum(d ** k for k in range(n))
    fact = math.factorial(d)
    if fact == 1:
        return Fraction(0)
    exponent, rest = 0, size
    while rest % fact == 0:
        rest //= fact
        exponent += 1
    if rest == 1:
        return Fraction(exponent, vertices)
    return math.log(size) / (vertices * math.log(fact))


@dataclass(frozen=True)
class Portrait:
    """Root permutations of all sections at vertices of depth < depth."""

    alphabet: Alphabet
    depth: int
    labels: dict

    def act(self, letters) -> tuple[int, ...]:
        if len(letters) > self.depth:
            raise UsageError("word longer than portrait depth")
        out, prefix = [], ()
        for x in letters:
            out.append(self.labels[prefix][x])
            prefix += (x,)
        return tuple(out)


def portrait(e: Element, depth: int) -> Portrait:
    a = element_automaton(e)
    m, d = a.automaton, e.group.degree
    labels = {}
    frontier = [((), a.initial)]
    for _ in range(depth):
        nxt = []
        for v, q in frontier:
            labels[v] = m.output[q]
            nxt.extend((v + (x,), m.transition[q][x]) for x in range(d))
        frontier = nxt
    return Portrait(e.group.alphabet, depth, labels)


def apply_substitution(group: GroupDef, rules: dict[str, GroupWord], word: GroupWord) -> GroupWord:
    out: list[int] = []
    for s in word:
        name = group.generators[s if s >= 0 else ~s]
        image = rules.get(name, (s if s >= 0 else ~s,))
        out.extend(image if s >= 0 else inverse_word(image))
    return free_reduce(out)


def verify_substitution_relators(
    group: GroupDef,
    relators: list[GroupWord],
    rules: dict[str, GroupWord],
    iterations: int,
) -> bool:
    """Check that sigma^i(r) is trivial for every relator r and 0 <= i <= iterations."""
    unknown = set(rules) - set(group.generators)
    if unknown:
        raise UsageError(f"substitution names unknown generators: {sorted(unknown)}")
    for r in relators:
        word = r
        for i in range(iterations + 1):
            if not is_trivial(Element(group, word)):
                logger.info(f"relator {format_word(group, r)} fails after {i} substitutions")
                return False
            if i < iterations:
                word = apply_substitution(group, rules, word)
    return True


def symmetrize(group: GroupDef, gens: list[Element] | None = None) -> list[tuple[str, Element]]:
    """Generators together with their inverses; involutions appear once."""
    if gens is None:
        gens = [Element(group, (i,)) for i in range(len(group.generators))]
    out: list[tuple[str, Element]] = []
    seen = set()
    for g in gens:
        for h in (g, g.inverse()):
            key = element_automaton(h)
            if key not in seen:
                seen.add(key)
                out.append((str(h), h))
    return out


def group_growth(group: GroupDef, radius: int, cap: int | None = None) -> list[int]:
    """|B(r)| in the Cayley graph for r = 0..radius, elements compared by action."""
    cap = cap or settings.CLOSURE_CAP
    steps = [element_automaton(h) for _, h in symmetrize(group)]
    start = mealy.identity_automaton(group.alphabet)
    seen = {start}
    frontier = [start]
    sizes = [1]
    for _ in range(radius):
        nxt = []
        for a in frontier:
            for s in steps:
                b = mealy.minimize_initial(mealy.compose(a, s))
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
                    if len(seen) > cap:
                        raise ClosureExceeded(f"ball exceeds {cap} elements")
        frontier = nxt
        sizes.append(len(seen))
    return sizes
