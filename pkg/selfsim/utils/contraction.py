from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import lcm

import numpy as np

from selfsim.config import logger, settings
from selfsim.exceptions import ClosureExceeded, NotInvertible, UsageError
from selfsim.utils import mealy
from selfsim.utils.groups import (
    Element,
    GroupDef,
    GroupWord,
    act_level,
    check_level,
    element_automaton,
    format_word,
    free_reduce,
    generator_automaton,
    letter_sort_key,
    restrict_word,
    restriction,
)
from selfsim.utils.mealy import InitialAutomaton, MealyAutomaton
from selfsim.utils.permgroup import format_cycles
from selfsim.utils.schreier import LabeledGraph, vertex_names
from selfsim.utils.words import Alphabet


class _RestrictionGraph:
    """Elements keyed by canonical automaton, with their restriction edges."""

    def __init__(self, group: GroupDef, cap: int):
        self.group = group
        self.cap = cap
        self.words: dict[InitialAutomaton, GroupWord] = {}
        self.children: dict[InitialAutomaton, tuple[InitialAutomaton, ...]] = {}

    def __len__(self):
        return len(self.words)

    def add(self, key: InitialAutomaton, word: GroupWord) -> list[InitialAutomaton]:
        """Insert key and every restriction of it; returns all keys reached."""
        reached = []
        queue = deque([(key, word)])
        local = {key}
        while queue:
            k, w = queue.popleft()
            reached.append(k)
            if k in self.words:
                if letter_sort_key(w) < letter_sort_key(self.words[k]):
                    self.words[k] = w
                if k in self.children:
                    for child in self.children[k]:
                        if child not in local:
                            local.add(child)
                            queue.append((child, self.words[child]))
                    continue
            else:
                self.words[k] = w
            if len(self.words) > self.cap:
                raise ClosureExceeded(f"{len(self.words)} candidate elements exceed cap {self.cap}")
            kids = []
            m = k.automaton
            for x in range(self.group.degree):
                child = mealy.minimize_initial(InitialAutomaton(m, m.transition[k.initial][x]))
                kids.append(child)
                if child not in local:
                    local.add(child)
                    _, cw = restrict_word(self.group, w, x)
                    queue.append((child, cw))
            self.children[k] = tuple(kids)
        return reached

    def recurrent(self, keys) -> set[InitialAutomaton]:
        """Keys lying on a restriction cycle, plus everything reachable from them."""
        keys = set(keys)
        on_cycle = set()
        for k in keys:
            seen, stack = set(), list(self.children[k])
            while stack:
                c = stack.pop()
                if c == k:
                    on_cycle.add(k)
                    break
                if c not in seen:
                    seen.add(c)
                    stack.extend(self.children[c])
        out, stack = set(on_cycle), list(on_cycle)
        while stack:
            for c in self.children[stack.pop()]:
                if c not in out:
                    out.add(c)
                    stack.append(c)
        return out


def restriction_closure(group: GroupDef, seed: list[Element], cap: int | None = None) -> list[Element]:
    """Smallest restriction-closed set containing the seed, one representative per element."""
    graph = _RestrictionGraph(group, cap or settings.CLOSURE_CAP)
    for e in seed:
        graph.add(element_automaton(e), e.word)
    return sorted((Element(group, w) for w in graph.words.values()), key=lambda e: letter_sort_key(e.word))


@dataclass(frozen=True)
class Nucleus:
    group: GroupDef
    elements: tuple[Element, ...]
    keys: tuple[InitialAutomaton, ...]
    automaton: MealyAutomaton

    def __len__(self):
        return len(self.elements)

    def index(self, e: Element) -> int | None:
        key = element_automaton(e)
        return self.keys.index(key) if key in self.keys else None

    def __contains__(self, e: Element) -> bool:
        return self.index(e) is not None

    @property
    def identity_index(self) -> int:
        return self.keys.index(mealy.identity_automaton(self.group.alphabet))

    def to_dsl(self) -> str:
        """Nucleus listed as a wreath recursion over its own elements."""
        m = self.automaton
        lines = [f"# nucleus of {self.group.name}: {len(self)} elements"]
        for q in range(m.num_states):
            perm = m.output[q]
            cycles = format_cycles(tuple(perm))
            kids = ", ".join(m.name(t) for t in m.transition[q])
            lines.append(f"{m.name(q)} = perm{cycles} [{kids}]")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Exceeded:
    cap: int
    size: int


def _build_nucleus(group: GroupDef, graph: _RestrictionGraph, current: set) -> Nucleus:
    keys = sorted(current, key=lambda k: letter_sort_key(graph.words[k]))
    position = {k: i for i, k in enumerate(keys)}
    output = tuple(k.automaton.output[k.initial] for k in keys)
    transition = tuple(tuple(position[c] for c in graph.children[k]) for k in keys)
    names = tuple(format_word(group, graph.words[k]) for k in keys)
    elements = tuple(Element(group, graph.words[k]) for k in keys)
    return Nucleus(group, elements, tuple(keys), MealyAutomaton(group.alphabet, output, transition, names))


def nucleus(group: GroupDef, cap: int | None = None) -> Nucleus | Exceeded:
    """Iterate N -> recurrent part of the restriction closure of N*N until it stabilizes."""
    cap = cap or settings.NUCLEUS_CAP
    if not mealy.is_invertible(generator_automaton(group)[0]):
        raise NotInvertible(f"{group.name} is not defined by invertible automata")
    graph = _RestrictionGraph(group, cap)
    try:
        seeds = [Element(group)] + [Element(group, (s,)) for i in range(len(group.generators)) for s in (i, ~i)]
        reached = set()
        for e in seeds:
            reached.update(graph.add(element_automaton(e), e.word))
        current = graph.recurrent(reached)
        rounds = 0
        while True:
            rounds += 1
            ordered = sorted(current, key=lambda k: letter_sort_key(graph.words[k]))
            reached = set(current)
            for h1 in ordered:
                for h2 in ordered:
                    key = mealy.minimize_initial(mealy.compose(h1, h2))
                    reached.update(graph.add(key, free_reduce(graph.words[h1] + graph.words[h2])))
            new = graph.recurrent(reached)
            logger.debug(f"nucleus round {rounds}: {len(new)} recurrent of {len(graph)} candidates")
            if new == current:
                break
            current = new
    except ClosureExceeded:
        logger.info(f"nucleus search for {group.name} passed cap {cap}")
        return Exceeded(cap, len(graph))
    # words of the final keys may have been shortened while exploring
    return _build_nucleus(group, graph, current)


@dataclass(frozen=True)
class Contracting:
    nucleus: Nucleus


@dataclass(frozen=True)
class Inconclusive:
    cap: int


def is_contracting(group: GroupDef, cap: int | None = None) -> Contracting | Inconclusive:
    result = nucleus(group, cap)
    if isinstance(result, Exceeded):
        return Inconclusive(result.cap)
    return Contracting(result)


class _LengthReducer:
    """Rewrites adjacent letter pairs that equal a single letter or the identity."""

    def __init__(self, group: GroupDef):
        self.group = group
        letters = [s for i in range(len(group.generators)) for s in (i, ~i)]
        singles: dict[InitialAutomaton, GroupWord] = {mealy.identity_automaton(group.alphabet): ()}
        for s in letters:
            singles.setdefault(element_automaton(Element(group, (s,))), (s,))
        self.pairs: dict[tuple[int, int], GroupWord] = {}
        for s in letters:
            for t in letters:
                key = element_automaton(Element(group, (s, t)))
                if key in singles:
                    self.pairs[(s, t)] = singles[key]
        for s in letters:
            key = element_automaton(Element(group, (s,)))
            if singles[key] != (s,):
                self.pairs[(s,)] = singles[key]

    def reduce(self, word: GroupWord) -> GroupWord:
        stack: list[int] = []
        pending = list(reversed(word))
        while pending:
            s = pending.pop()
            if (s,) in self.pairs:
                pending.extend(reversed(self.pairs[(s,)]))
                continue
            if stack and (stack[-1], s) in self.pairs:
                top = stack.pop()
                pending.extend(reversed(self.pairs[(top, s)]))
                continue
            stack.append(s)
        return tuple(stack)


def contraction_estimate(
    group: GroupDef,
    nucleus_: Nucleus | None = None,
    samples: int = 16,
    depth: int = 4,
    seed: int | None = None,
    length: int | None = None,
) -> float:
    """Max over sampled elements e and |v| = depth of (|e|_v| / |e|)^(1/depth).

    With a nucleus, a restriction that lands in it is measured by the shortest nucleus word for it.
    """
    if nucleus_ is not None and nucleus_.group != group:
        raise UsageError(f"nucleus belongs to {nucleus_.group.name}, not {group.name}")
    seed = settings.SEED if seed is None else seed
    rng = np.random.default_rng(seed)
    reducer = _LengthReducer(group)
    short: dict[InitialAutomaton, int] = {}
    if nucleus_ is not None:
        for key, h in zip(nucleus_.keys, nucleus_.elements):
            short[key] = min(short.get(key, len(h.word)), len(reducer.reduce(h.word)))
    letters = [s for i in range(len(group.generators)) for s in (i, ~i)]
    length = length or 4 * group.degree ** depth
    best = 0.0
    for _ in range(samples):
        word: GroupWord = ()
        while len(word) < length:
            options = [w for w in (reducer.reduce(word + (s,)) for s in letters) if len(w) > len(word)]
            if not options:
                break
            word = options[int(rng.integers(len(options)))]
        if not word:
            continue
        e = Element(group, word)
        for v in group.alphabet.words(depth):
            r = reducer.reduce(restriction(e, v).word)
            size = len(r)
            if short and size > 1:
                size = min(size, short.get(element_automaton(Element(group, r)), size))
            best = max(best, (size / len(word)) ** (1.0 / depth))
    logger.debug(f"contraction estimate for {group.name} at depth {depth}: {best:.4f}")
    return best


def open_set_condition(n: Nucleus) -> bool:
    """Every nucleus element has the identity among its iterated restrictions."""
    m = n.automaton
    target = n.identity_index
    predecessors: list[set[int]] = [set() for _ in range(m.num_states)]
    for q in range(m.num_states):
        for t in m.transition[q]:
            predecessors[t].add(q)
    reach, stack = {target}, [target]
    while stack:
        for q in predecessors[stack.pop()]:
            if q not in reach:
                reach.add(q)
                stack.append(q)
    return len(reach) == m.num_states


@dataclass(frozen=True)
class LeftWord:
    """Left-infinite word ...PPP S; the last letter of S has index 1."""

    alphabet: Alphabet
    tail: tuple[int, ...]
    suffix: tuple[int, ...] = ()

    @classmethod
    def parse(cls, alphabet: Alphabet, text: str) -> "LeftWord":
        """Parse `(TAIL)SUFFIX`."""
        text = text.strip()
        if not text.startswith("(") or ")" not in text:
            raise UsageError(f"left-infinite word {text!r} must look like (TAIL)SUFFIX")
        tail, suffix = text[1:].split(")", 1)
        if not tail:
            raise UsageError("tail of a left-infinite word must be nonempty")
        return cls(alphabet, alphabet.parse(tail), alphabet.parse(suffix))

    def __str__(self):
        return f"({self.alphabet.format(self.tail)}){self.alphabet.format(self.suffix)}"

    def letter(self, k: int) -> int:
        """x_k, counted from 1 at the right end."""
        m = len(self.suffix)
        if k <= m:
            return self.suffix[m - k]
        return self.tail[(-(k - m)) % len(self.tail)]


def _step(m: MealyAutomaton, states: frozenset, x: int, y: int) -> frozenset:
    return frozenset(m.transition[h][x] for h in states if m.output[h][x] == y)


def asymptotically_equivalent(n: Nucleus, left: LeftWord, right: LeftWord) -> bool:
    """Whether some backward path in the nucleus Moore diagram reads the pairs (x_k, y_k)."""
    if left.alphabet != n.group.alphabet or right.alphabet != n.group.alphabet:
        raise UsageError("left-infinite words must use the group alphabet")
    m = n.automaton
    depth = max(len(left.suffix), len(right.suffix))
    period = lcm(len(left.tail), len(right.tail))
    tail_pair = [(left.letter(depth + j), right.letter(depth + j)) for j in range(1, period + 1)]
    # W[j] = states admitting an infinite run from position depth + j + 1
    everything = frozenset(range(m.num_states))
    w = [everything] * period
    changed = True
    while changed:
        changed = False
        for j in range(period - 1, -1, -1):
            x, y = tail_pair[(j + 1) % period]
            nxt = _step(m, w[(j + 1) % period], x, y)
            if nxt != w[j]:
                w[j] = nxt
                changed = True
    # w[period - 1] describes position depth + period, the same phase as position depth
    states = w[period - 1]
    for k in range(depth, 0, -1):
        states = _step(m, states, left.letter(k), right.letter(k))
    return bool(states)


def tile_graph(n: Nucleus, level: int, bound: int | None = None):
    """Simplicial graph on X^level joining v and v^h for each nucleus element h."""
    group = n.group
    check_level(group, level, bound)
    edges = []
    for name, e in zip(n.automaton.names, n.elements):
        perm = act_level(e, level, bound)
        edges.extend((v, u, name) for v, u in enumerate(perm))
    return LabeledGraph(vertex_names(group.alphabet, level), tuple(edges), directed=True).simplicial()
