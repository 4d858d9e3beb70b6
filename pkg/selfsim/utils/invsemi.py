from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from selfsim.config import logger
from selfsim.exceptions import InvalidDefinition, OutOfDomain, UsageError
from selfsim.utils.words import Alphabet, OmegaWord, Sft, is_admissible


@dataclass(frozen=True)
class Rule:
    """Consume `consumed`, peek at `lookahead`, emit `output`, continue with map `then` (None = identity)."""

    consumed: tuple[int, ...]
    lookahead: tuple[int, ...]
    output: tuple[int, ...]
    then: str | None

    @property
    def pattern(self) -> tuple[int, ...]:
        return self.consumed + self.lookahead


@dataclass(frozen=True)
class RuleTable:
    name: str
    alphabet: Alphabet
    sft: Sft
    maps: tuple[tuple[str, tuple[Rule, ...]], ...]

    def __post_init__(self):
        names = [m for m, _ in self.maps]
        for _, rules in self.maps:
            for r in rules:
                if not r.consumed or not r.output:
                    raise InvalidDefinition(f"{self.name}: every rule consumes and emits at least one letter")
                if len(r.pattern) > 2:
                    raise InvalidDefinition(f"{self.name}: lookahead window is at most two letters")
                if r.then is not None and r.then not in names:
                    raise InvalidDefinition(f"{self.name}: unknown continuation {r.then!r}")

    @property
    def map_names(self) -> tuple[str, ...]:
        return tuple(m for m, _ in self.maps)

    def rules(self, name: str) -> tuple[Rule, ...]:
        for m, rules in self.maps:
            if m == name:
                return rules
        raise UsageError(f"table {self.name} has no map {name!r}")

    def match(self, name: str, window: tuple[int, int]) -> Rule | None:
        hits = [r for r in self.rules(name) if window[: len(r.pattern)] == r.pattern]
        return hits[0] if len(hits) == 1 else None


def audit(table: RuleTable) -> list[str]:
    """Blocks x y of the subshift with no or several matching rules, per map, for words the map accepts."""
    problems = []
    blocks = [b for b in product(range(table.alphabet.size), repeat=2) if _admissible_pair(table.sft, b)]
    for name, rules in table.maps:
        domain = {r.pattern[0] for r in rules}
        for block in blocks:
            if block[0] not in domain:
                continue
            hits = [r for r in rules if block[: len(r.pattern)] == r.pattern]
            if len(hits) != 1:
                problems.append(f"{name}: {len(hits)} rules match {table.alphabet.format(block)}")
    return problems


def _admissible_pair(sft: Sft, block) -> bool:
    if sft.block_length == 1:
        return all((x,) in sft.admissible for x in block)
    return sft.block_length != 2 or tuple(block) in sft.admissible


def checked(table: RuleTable) -> RuleTable:
    problems = audit(table)
    if problems:
        raise InvalidDefinition(f"rule table {table.name} is ambiguous or incomplete: {problems}")
    return table


def apply_map(table: RuleTable, name: str, w: OmegaWord) -> OmegaWord:
    """Image of an admissible eventually periodic word; stops once a (map, phase) pair repeats."""
    if w.alphabet != table.alphabet:
        raise UsageError("word alphabet differs from the rule table alphabet")
    pre, p = len(w.preperiod), len(w.period)

    def phase(pos: int) -> int:
        return pos if pos < pre else pre + (pos - pre) % p

    out: list[int] = []
    seen: dict[tuple[str, int], int] = {}
    current, pos = name, 0
    while current is not None:
        key = (current, phase(pos))
        if key in seen:
            start = seen[key]
            return OmegaWord(w.alphabet, tuple(out[:start]), tuple(out[start:]))
        seen[key] = len(out)
        window = (w.letter_at(pos), w.letter_at(pos + 1))
        rule = table.match(current, window)
        if rule is None:
            raise OutOfDomain(f"map {current} of {table.name} is undefined on {table.alphabet.format(window)}...")
        out.extend(rule.output)
        pos += len(rule.consumed)
        current = rule.then
    # identity continuation: copy the rest of the input
    if pos < pre:
        return OmegaWord(w.alphabet, tuple(out) + w.preperiod[pos:], w.period)
    shift = (pos - pre) % p
    return OmegaWord(w.alphabet, tuple(out), w.period[shift:] + w.period[:shift])


def apollonian_apply(table: RuleTable, i: int, w: OmegaWord) -> OmegaWord:
    """gamma_i: strip a leading i, otherwise prepend it."""
    if not is_admissible(table.sft, w):
        raise UsageError(f"{w} has equal consecutive letters")
    return apply_map(table, "g" + table.alphabet.letters[i], w)


def involution_check(table: RuleTable, name: str, depth: int, tail_period: int = 3) -> bool:
    """Apply the map twice to every admissible word of the given length followed by each admissible periodic tail."""
    a = table.alphabet
    tails = []
    for p in range(1, tail_period + 1):
        for period in product(range(a.size), repeat=p):
            w = OmegaWord(a, (), period)
            if w.period == period and is_admissible(table.sft, w):
                tails.append(period)
    domain = {r.pattern[0] for r in table.rules(name)}
    checked_words = 0
    for prefix in admissible_words(table.sft, depth):
        if depth and prefix[0] not in domain:
            continue
        for period in tails:
            w = OmegaWord(a, prefix, period)
            if not is_admissible(table.sft, w) or w.letter_at(0) not in domain:
                continue
            checked_words += 1
            try:
                image = apply_map(table, name, w)
                back = apply_map(table, name, image)
            except OutOfDomain:
                logger.info(f"{name} leaves its domain on {w}")
                return False
            if back != w:
                logger.info(f"{name} is not an involution: {w} -> {image} -> {back}")
                return False
    logger.debug(f"{name} of {table.name} is an involution on {checked_words} words")
    return True


# --- Zeckendorf numeration ---------------------------------------------------

def zeckendorf_weights(length: int) -> list[int]:
    weights = [1, 2]
    while len(weights) < length:
        weights.append(weights[-1] + weights[-2])
    return weights[:length]


def zeckendorf_encode(m: int, length: int) -> tuple[int, ...]:
    """Greedy digits, least significant first, with no two adjacent ones."""
    if m < 0:
        raise UsageError("only nonnegative integers have a Zeckendorf expansion")
    weights = zeckendorf_weights(length)
    digits = [0] * length
    for i in range(length - 1, -1, -1):
        if weights[i] <= m:
            digits[i] = 1
            m -= weights[i]
    if m:
        raise UsageError(f"{length} Zeckendorf digits are not enough")
    return tuple(digits)


def zeckendorf_decode(digits) -> int:
    return sum(w for w, x in zip(zeckendorf_weights(len(digits)), digits) if x)


def fibonacci_successor(table: RuleTable, m: int, length: int = 32) -> int:
    """m + 1 computed by the a/b maps of the Fibonacci table on the expansion of m."""
    digits = zeckendorf_encode(m, length)
    w = OmegaWord(table.alphabet, digits, (0,))
    image = apply_map(table, "a" if digits[0] == 0 else "b", w)
    if image.period != (0,) or len(image.preperiod) > length:
        raise OutOfDomain(f"successor of {m} does not fit in {length} digits")
    return zeckendorf_decode(image.preperiod)


# --- text form -----------------------------------------------------------------

def render_rule_table(table: RuleTable) -> str:
    a = table.alphabet
    lines = [f"rules {table.name} letters {a.letters}"]
    lines.extend(f"forbid {a.format(b)}" for b in table.sft.forbidden)
    for name, rules in table.maps:
        for r in rules:
            look = f"[{a.format(r.lookahead)}]" if r.lookahead else ""
            lines.append(f"{name}: {a.format(r.consumed)}{look} -> {a.format(r.output)} {r.then or '-'}")
    return "\n".join(lines) + "\n"


def parse_rule_table(text: str) -> RuleTable:
    lines = [line.split("#", 1)[0].strip() for line in text.splitlines()]
    lines = [line for line in lines if line]
    if not lines or not lines[0].startswith("rules "):
        raise InvalidDefinition("rule table must start with 'rules NAME letters LETTERS'")
    head = lines[0].split()
    if len(head) != 4 or head[2] != "letters":
        raise InvalidDefinition(f"bad header {lines[0]!r}")
    alphabet = Alphabet(len(head[3]), head[3])
    forbidden, maps = [], {}
    for line in lines[1:]:
        if line.startswith("forbid "):
            forbidden.append(alphabet.parse(line.split()[1]))
            continue
        try:
            name, body = line.split(":", 1)
            lhs, rhs = body.split("->")
            pattern = lhs.strip()
            consumed, _, look = pattern.partition("[")
            output, then = rhs.split()
        except ValueError:
            raise InvalidDefinition(f"bad rule line {line!r}")
        rule = Rule(
            alphabet.parse(consumed),
            alphabet.parse(look.rstrip("]")),
            alphabet.parse(output),
            None if then == "-" else then,
        )
        maps.setdefault(name.strip(), []).append(rule)
    sft = Sft.forbidding(alphabet, forbidden) if forbidden else Sft(alphabet, 1, frozenset((x,) for x in range(alphabet.size)))
    return RuleTable(head[1], alphabet, sft, tuple((m, tuple(r)) for m, r in maps.items()))


def admissible_words(sft: Sft, length: int):
    """Finite words of the given length all of whose blocks are admissible."""
    words = [()]
    for _ in range(length):
        grown = []
        for w in words:
            for x in range(sft.alphabet.size):
                candidate = w + (x,)
                block = candidate[-sft.block_length:]
                if len(block) < sft.block_length or block in sft.admissible:
                    grown.append(candidate)
        words = grown
    return words
