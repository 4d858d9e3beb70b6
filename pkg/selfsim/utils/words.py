from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from selfsim.exceptions import AlphabetMismatch, InvalidDefinition, UsageError

DEFAULT_LETTERS = "0123456789abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class Alphabet:
    """Finite alphabet {0..size-1} with a printable letter for each index."""

    size: int
    letters: str = ""

    def __post_init__(self):
        if self.size < 1:
            raise InvalidDefinition(f"alphabet size must be positive, got {self.size}")
        if not self.letters:
            if self.size > len(DEFAULT_LETTERS):
                raise InvalidDefinition(f"alphabet of size {self.size} needs an explicit letter table")
            object.__setattr__(self, "letters", DEFAULT_LETTERS[: self.size])
        if len(self.letters) != self.size or len(set(self.letters)) != self.size:
            raise InvalidDefinition(f"letter table {self.letters!r} does not match size {self.size}")

    def index(self, char: str) -> int:
        pos = self.letters.find(char)
        if pos < 0 or len(char) != 1:
            raise UsageError(f"letter {char!r} not in alphabet {self.letters!r}")
        return pos

    def parse(self, text: str) -> tuple[int, ...]:
        return tuple(self.index(c) for c in text)

    def format(self, letters) -> str:
        return "".join(self.letters[x] for x in letters)

    def words(self, length: int):
        """All words of the given length, last letter varying fastest."""
        return product(range(self.size), repeat=length)


@dataclass(frozen=True)
class Word:
    alphabet: Alphabet
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        for x in self.letters:
            if not 0 <= x < self.alphabet.size:
                raise AlphabetMismatch(f"letter {x} outside alphabet of size {self.alphabet.size}")

    @classmethod
    def parse(cls, alphabet: Alphabet, text: str) -> "Word":
        return cls(alphabet, alphabet.parse(text))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return self.alphabet.format(self.letters)


def _minimal_period(period: tuple[int, ...]) -> tuple[int, ...]:
    n = len(period)
    for p in range(1, n + 1):
        if n % p == 0 and period[:p] * (n // p) == period:
            return period[:p]
    return period


@dataclass(frozen=True)
class OmegaWord:
    """Eventually periodic infinite word preperiod·period^∞, always kept canonical."""

    alphabet: Alphabet
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        pre, per = tuple(self.preperiod), tuple(self.period)
        if not per:
            raise InvalidDefinition("period of an infinite word must be nonempty")
        for x in pre + per:
            if not 0 <= x < self.alphabet.size:
                raise AlphabetMismatch(f"letter {x} outside alphabet of size {self.alphabet.size}")
        per = _minimal_period(per)
        # absorb the preperiod into the period by rotation
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = per[-1:] + per[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def parse(cls, alphabet: Alphabet, text: str) -> "OmegaWord":
        """Parse `PRE(PERIOD)`."""
        text = text.strip()
        if not text.endswith(")") or text.count("(") != 1:
            raise UsageError(f"infinite word {text!r} must look like PRE(PERIOD)")
        pre, per = text[:-1].split("(")
        return cls(alphabet, alphabet.parse(pre), alphabet.parse(per))

    def __str__(self):
        return f"{self.alphabet.format(self.preperiod)}({self.alphabet.format(self.period)})"

    def letter_at(self, i: int) -> int:
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def prefix(self, k: int) -> tuple[int, ...]:
        return tuple(self.letter_at(i) for i in range(k))

    def shift(self) -> "OmegaWord":
        if self.preperiod:
            return OmegaWord(self.alphabet, self.preperiod[1:], self.period)
        return OmegaWord(self.alphabet, (), self.period[1:] + self.period[:1])


def omega_eq(u: OmegaWord, v: OmegaWord) -> bool:
    if u.alphabet != v.alphabet:
        raise AlphabetMismatch("infinite words over different alphabets")
    return u.preperiod == v.preperiod and u.period == v.period


@dataclass(frozen=True)
class Sft:
    """Subshift of finite type given by its admissible blocks of length `block_length`."""

    alphabet: Alphabet
    block_length: int
    admissible: frozenset

    @classmethod
    def forbidding(cls, alphabet: Alphabet, forbidden: list[tuple[int, ...]]) -> "Sft":
        m = max((len(b) for b in forbidden), default=1)
        blocks = frozenset(
            block for block in product(range(alphabet.size), repeat=m)
            if not any(_contains(block, f) for f in forbidden)
        )
        return cls(alphabet, m, blocks)

    @property
    def forbidden(self) -> list[tuple[int, ...]]:
        return [b for b in product(range(self.alphabet.size), repeat=self.block_length) if b not in self.admissible]


def _contains(block, factor) -> bool:
    k = len(factor)
    return any(tuple(block[i:i + k]) == tuple(factor) for i in range(len(block) - k + 1))


def _factors(letters: tuple[int, ...], m: int):
    for i in range(len(letters) - m + 1):
        yield letters[i:i + m]


def is_admissible(sft: Sft, w: Word | OmegaWord) -> bool:
    if w.alphabet != sft.alphabet:
        raise AlphabetMismatch("word and subshift use different alphabets")
    m = sft.block_length
    if isinstance(w, OmegaWord):
        repeats = -(-(m - 1) // len(w.period)) + 1
        letters = w.preperiod + w.period * repeats
    else:
        letters = w.letters
    return all(f in sft.admissible for f in _factors(letters, m))
