from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import pandas as pd

from selfsim.config import logger
from selfsim.exceptions import UsageError
from selfsim.utils.groups import (
    Element,
    GroupDef,
    act_level,
    act_omega,
    check_level,
    symmetrize,
)
from selfsim.utils.words import Alphabet, OmegaWord


@dataclass(frozen=True)
class LabeledGraph:
    names: tuple[str, ...]
    edges: tuple[tuple[int, int, str], ...]
    directed: bool = True

    @property
    def num_vertices(self) -> int:
        return len(self.names)

    def simplicial(self) -> "LabeledGraph":
        """Undirected, loops dropped, parallel edges merged with joined labels."""
        merged: dict[tuple[int, int], set[str]] = {}
        for s, t, label in self.edges:
            if s != t:
                merged.setdefault((min(s, t), max(s, t)), set()).update(label.split(","))
        edges = tuple((s, t, ",".join(sorted(labels))) for (s, t), labels in sorted(merged.items()))
        return LabeledGraph(self.names, edges, directed=False)

    def adjacency(self) -> list[list[int]]:
        adj: list[set[int]] = [set() for _ in self.names]
        for s, t, _ in self.edges:
            if s != t:
                adj[s].add(t)
                adj[t].add(s)
        return [sorted(a) for a in adj]

    def degree(self, v: int) -> int:
        return len(self.adjacency()[v])

    def out_degree(self, v: int) -> int:
        return sum(1 for s, _, _ in self.edges if s == v)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UsageError(f"no vertex named {name!r}")


def vertex_names(alphabet: Alphabet, n: int) -> tuple[str, ...]:
    return tuple(alphabet.format(w) for w in alphabet.words(n))


def _generator_list(group: GroupDef, gens) -> list[Element]:
    if gens is None:
        return [Element(group, (i,)) for i in range(len(group.generators))]
    out = []
    for g in gens:
        if isinstance(g, Element):
            out.append(g)
        elif g in group.generators:
            out.append(Element(group, (group.generators.index(g),)))
        else:
            raise UsageError(f"unknown generator {g!r} for {group.name}")
    return out


def level_schreier(group: GroupDef, gens=None, n: int = 1, bound: int | None = None) -> LabeledGraph:
    """Action graph of the symmetrized generators on X^n."""
    check_level(group, n, bound)
    edges = []
    for label, e in symmetrize(group, _generator_list(group, gens)):
        perm = act_level(e, n, bound)
        edges.extend((v, u, label) for v, u in enumerate(perm))
    return LabeledGraph(vertex_names(group.alphabet, n), tuple(edges), directed=True)


def orbit_ball(group: GroupDef, gens, basepoint: OmegaWord, radius: int) -> LabeledGraph:
    """Ball of the given radius around an eventually periodic point in its orbital graph."""
    if basepoint.alphabet != group.alphabet:
        raise UsageError("basepoint is not over the group alphabet")
    steps = symmetrize(group, _generator_list(group, gens))
    dist = {basepoint: 0}
    order = [basepoint]
    images: dict[OmegaWord, list[tuple[str, OmegaWord]]] = {}
    queue = deque([basepoint])
    while queue:
        w = queue.popleft()
        images[w] = [(label, act_omega(e, w)) for label, e in steps]
        if dist[w] == radius:
            continue
        for _, u in images[w]:
            if u not in dist:
                dist[u] = dist[w] + 1
                order.append(u)
                queue.append(u)
    position = {w: i for i, w in enumerate(order)}
    edges = tuple(
        (position[w], position[u], label)
        for w in order
        for label, u in images[w]
        if u in position
    )
    names = tuple(str(w) for w in order)
    logger.debug(f"orbit ball of radius {radius} around {basepoint} has {len(names)} vertices")
    return LabeledGraph(names, edges, directed=True)


@dataclass(frozen=True)
class GrowthSeq:
    basepoint: str
    sizes: tuple[int, ...]


def ball_growth(graph: LabeledGraph, v: int | str, r_max: int) -> GrowthSeq:
    """|B(v, r)| for r = 0..r_max in the simplicial graph."""
    start = graph.index(v) if isinstance(v, str) else v
    adj = graph.adjacency()
    dist = {start: 0}
    queue = deque([start])
    while queue:
        i = queue.popleft()
        if dist[i] == r_max:
            continue
        for j in adj[i]:
            if j not in dist:
                dist[j] = dist[i] + 1
                queue.append(j)
    counts = [0] * (r_max + 1)
    for d in dist.values():
        counts[d] += 1
    sizes, total = [], 0
    for c in counts:
        total += c
        sizes.append(total)
    return GrowthSeq(graph.names[start], tuple(sizes))


def covering_check(group: GroupDef, gens, n: int, bound: int | None = None) -> bool:
    """Dropping the last letter maps the level n+1 graph onto the level n graph."""
    upper = level_schreier(group, gens, n + 1, bound)
    lower = level_schreier(group, gens, n, bound)
    d = group.degree
    lower_edges = set(lower.edges)
    return all((s // d, t // d, label) in lower_edges for s, t, label in upper.edges)


def export_dot(graph: LabeledGraph, simplicial: bool = False, name: str = "schreier") -> str:
    g = graph.simplicial() if simplicial and graph.directed else graph
    kind, arrow = ("digraph", "->") if g.directed else ("graph", "--")
    lines = [f'{kind} "{name}" {{']
    lines.extend(f'  {i} [label="{label}"];' for i, label in enumerate(g.names))
    lines.extend(f'  {s} {arrow} {t} [label="{label}"];' for s, t, label in sorted(g.edges))
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_csv(graph: LabeledGraph) -> str:
    frame = pd.DataFrame(
        [(graph.names[s], graph.names[t], label) for s, t, label in sorted(graph.edges)],
        columns=["src", "dst", "label"],
    )
    return frame.to_csv(index=False, lineterminator="\n")
