from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from selfsim.config import logger
from selfsim.exceptions import AlphabetMismatch, InvalidDefinition, NotInvertible
from selfsim.utils.words import Alphabet, OmegaWord, Word


@dataclass(frozen=True)
class MealyAutomaton:
    """Synchronous transducer: output[q][x] is the letter written, transition[q][x] the next state."""

    alphabet: Alphabet
    output: tuple[tuple[int, ...], ...]
    transition: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        d, n = self.alphabet.size, len(self.output)
        if n == 0 or len(self.transition) != n:
            raise InvalidDefinition("automaton needs matching nonempty output and transition tables")
        for row_out, row_tr in zip(self.output, self.transition):
            if len(row_out) != d or len(row_tr) != d:
                raise InvalidDefinition("table rows must have one entry per letter")
            if any(not 0 <= y < d for y in row_out) or any(not 0 <= q < n for q in row_tr):
                raise InvalidDefinition("table entry out of range")
        if self.names is not None and len(self.names) != n:
            raise InvalidDefinition("one name per state required")

    @property
    def num_states(self) -> int:
        return len(self.output)

    def name(self, q: int) -> str:
        return self.names[q] if self.names else str(q)


@dataclass(frozen=True)
class InitialAutomaton:
    automaton: MealyAutomaton
    initial: int

    @property
    def alphabet(self) -> Alphabet:
        return self.automaton.alphabet


def identity_automaton(alphabet: Alphabet) -> InitialAutomaton:
    d = alphabet.size
    return InitialAutomaton(MealyAutomaton(alphabet, (tuple(range(d)),), ((0,) * d,)), 0)


def run(m: MealyAutomaton, q: int, letters) -> tuple[tuple[int, ...], int]:
    out = []
    for x in letters:
        out.append(m.output[q][x])
        q = m.transition[q][x]
    return tuple(out), q


def act(a: InitialAutomaton, w: Word) -> Word:
    if w.alphabet != a.alphabet:
        raise AlphabetMismatch("word alphabet differs from automaton alphabet")
    out, _ = run(a.automaton, a.initial, w.letters)
    return Word(w.alphabet, out)


def act_omega(a: InitialAutomaton, w: OmegaWord) -> OmegaWord:
    """Image of an eventually periodic word; the result is eventually periodic again."""
    if w.alphabet != a.alphabet:
        raise AlphabetMismatch("word alphabet differs from automaton alphabet")
    m = a.automaton
    head, q = run(m, a.initial, w.preperiod)
    out: list[int] = []
    seen: dict[tuple[int, int], int] = {}
    p = len(w.period)
    j = 0
    while (q, j % p) not in seen:
        seen[(q, j % p)] = len(out)
        x = w.period[j % p]
        out.append(m.output[q][x])
        q = m.transition[q][x]
        j += 1
    start = seen[(q, j % p)]
    return OmegaWord(w.alphabet, head + tuple(out[:start]), tuple(out[start:]))


def prune(a: InitialAutomaton) -> InitialAutomaton:
    """Keep states reachable from the initial one, renumbered in BFS order."""
    m = a.automaton
    order = {a.initial: 0}
    queue = deque([a.initial])
    while queue:
        q = queue.popleft()
        for nxt in m.transition[q]:
            if nxt not in order:
                order[nxt] = len(order)
                queue.append(nxt)
    states = sorted(order, key=order.get)
    output = tuple(m.output[q] for q in states)
    transition = tuple(tuple(order[t] for t in m.transition[q]) for q in states)
    names = tuple(m.names[q] for q in states) if m.names else None
    return InitialAutomaton(MealyAutomaton(m.alphabet, output, transition, names), 0)


def compose(a: InitialAutomaton, b: InitialAutomaton) -> InitialAutomaton:
    """Automaton acting as a followed by b."""
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch("cannot compose automata over different alphabets")
    ma, mb = a.automaton, b.automaton
    d = a.alphabet.size
    start = (a.initial, b.initial)
    index = {start: 0}
    queue = deque([start])
    output, transition = [], []
    while queue:
        s, r = queue.popleft()
        row_out, row_tr = [], []
        for x in range(d):
            y = ma.output[s][x]
            row_out.append(mb.output[r][y])
            nxt = (ma.transition[s][x], mb.transition[r][y])
            if nxt not in index:
                index[nxt] = len(index)
                queue.append(nxt)
            row_tr.append(index[nxt])
        output.append(tuple(row_out))
        transition.append(tuple(row_tr))
    return InitialAutomaton(MealyAutomaton(a.alphabet, tuple(output), tuple(transition)), 0)


def is_invertible(m: MealyAutomaton) -> bool:
    return all(sorted(row) == list(range(m.alphabet.size)) for row in m.output)


def invert(a: InitialAutomaton) -> InitialAutomaton:
    m = a.automaton
    if not is_invertible(m):
        raise NotInvertible("some state output is not a permutation of the alphabet")
    d = m.alphabet.size
    output, transition = [], []
    for q in range(m.num_states):
        row_out, row_tr = [0] * d, [0] * d
        for x in range(d):
            y = m.output[q][x]
            row_out[y] = x
            row_tr[y] = m.transition[q][x]
        output.append(tuple(row_out))
        transition.append(tuple(row_tr))
    return InitialAutomaton(MealyAutomaton(m.alphabet, tuple(output), tuple(transition), m.names), a.initial)


def acts_trivially(m: MealyAutomaton, q: int) -> bool:
    """True iff state q fixes every word: no reachable state moves a letter."""
    d = m.alphabet.size
    predecessors: list[list[int]] = [[] for _ in range(m.num_states)]
    for s in range(m.num_states):
        for t in m.transition[s]:
            predecessors[t].append(s)
    moving = [s for s in range(m.num_states) if any(m.output[s][x] != x for x in range(d))]
    bad = set(moving)
    queue = deque(moving)
    while queue:
        t = queue.popleft()
        for s in predecessors[t]:
            if s not in bad:
                bad.add(s)
                queue.append(s)
    return q not in bad


def equivalence_classes(m: MealyAutomaton) -> list[int]:
    """Block id of every state under action equivalence (Moore refinement)."""
    blocks: dict = {}
    labels = [blocks.setdefault(row, len(blocks)) for row in m.output]
    while True:
        signature: dict = {}
        refined = [
            signature.setdefault((labels[q], tuple(labels[t] for t in m.transition[q])), len(signature))
            for q in range(m.num_states)
        ]
        if len(signature) == len(set(labels)):
            return refined
        labels = refined


def minimize(m: MealyAutomaton) -> MealyAutomaton:
    labels = equivalence_classes(m)
    count = max(labels) + 1
    first = [labels.index(b) for b in range(count)]
    output = tuple(m.output[q] for q in first)
    transition = tuple(tuple(labels[t] for t in m.transition[q]) for q in first)
    names = tuple(m.names[q] for q in first) if m.names else None
    if count < m.num_states:
        logger.debug(f"minimized automaton from {m.num_states} to {count} states")
    return MealyAutomaton(m.alphabet, output, transition, names)


def minimize_initial(a: InitialAutomaton) -> InitialAutomaton:
    """Canonical form: equal results iff the two automata act identically."""
    reachable = prune(a)
    labels = equivalence_classes(reachable.automaton)
    reduced = minimize(reachable.automaton)
    canonical = prune(InitialAutomaton(reduced, labels[reachable.initial]))
    return InitialAutomaton(
        MealyAutomaton(canonical.alphabet, canonical.automaton.output, canonical.automaton.transition),
        0,
    )


def to_dot(m: MealyAutomaton, name: str = "moore") -> str:
    lines = [f'digraph "{name}" {{']
    letters = m.alphabet.letters
    for q in range(m.num_states):
        lines.append(f'  {q} [label="{m.name(q)}"];')
    for q in range(m.num_states):
        for x in range(m.alphabet.size):
            lines.append(f'  {q} -> {m.transition[q][x]} [label="{letters[x]}|{letters[m.output[q][x]]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
