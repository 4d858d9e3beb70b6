from __future__ import annotations

import re

from selfsim.exceptions import InvalidDefinition, UsageError
from selfsim.utils.groups import GroupDef, format_word, parse_word
from selfsim.utils.permgroup import format_cycles, parse_cycles
from selfsim.utils.words import Alphabet

_HEADER = re.compile(r"^group\s+(\w+)\s+alphabet\s+(\d+)(?:\s+letters\s+(\S+))?$")
_GENERATOR = re.compile(r"^(\w+)\s*=\s*perm\s*(\([^\[]*\)|\(\))?\s*\[(.*)\]$")


def parse_group(text: str) -> GroupDef:
    """Parse

        group NAME alphabet D [letters L]
        g = perm(0 1) [w_0, ..., w_{D-1}]

    with restriction words in the usual word syntax (' for inverse, 1 for identity).
    """
    lines = []
    notes = []
    for raw in text.splitlines():
        line, _, comment = raw.partition("#")
        if comment.strip() and not line.strip():
            notes.append(comment.strip())
        if line.strip():
            lines.append(line.strip())
    if not lines:
        raise InvalidDefinition("empty group definition")
    header = _HEADER.match(lines[0])
    if not header:
        raise InvalidDefinition(f"bad header {lines[0]!r}; expected 'group NAME alphabet D'")
    name, d = header.group(1), int(header.group(2))
    alphabet = Alphabet(d, header.group(3) or "")
    entries = []
    for line in lines[1:]:
        match = _GENERATOR.match(line)
        if not match:
            raise InvalidDefinition(f"bad generator line {line!r}")
        cycles = (match.group(2) or "()").strip()
        try:
            perm = parse_cycles(cycles, d)
        except (ValueError, IndexError) as e:
            raise InvalidDefinition(f"bad permutation in {line!r}: {e}")
        words = [w.strip() for w in match.group(3).split(",")]
        if len(words) != d:
            raise InvalidDefinition(f"{match.group(1)} needs {d} restrictions, got {len(words)}")
        entries.append((match.group(1), perm, words))
    names = tuple(e[0] for e in entries)
    # placeholder restrictions so the word parser knows the generator names
    shell = GroupDef(name, alphabet, names, tuple(e[1] for e in entries), tuple(((),) * d for _ in entries))
    try:
        restrictions = tuple(tuple(parse_word(shell, w) for w in e[2]) for e in entries)
    except UsageError as e:
        raise InvalidDefinition(f"bad restriction word: {e.detail}")
    return GroupDef(name, alphabet, names, shell.permutations, restrictions, notes="\n".join(notes))


def render_group(group: GroupDef) -> str:
    a = group.alphabet
    header = f"group {group.name} alphabet {a.size}"
    if a.letters != Alphabet(a.size).letters:
        header += f" letters {a.letters}"
    lines = [f"# {note}" for note in group.notes.splitlines() if note]
    lines.append(header)
    for name, perm, row in zip(group.generators, group.permutations, group.restrictions):
        words = ", ".join(format_word(group, w) for w in row)
        lines.append(f"{name} = perm{format_cycles(perm)} [{words}]")
    return "\n".join(lines) + "\n"
