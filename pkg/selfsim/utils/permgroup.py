from __future__ import annotations

from selfsim.config import logger

Perm = tuple[int, ...]


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def mult_perm(p: Perm, q: Perm) -> Perm:
    """p then q."""
    return tuple(q[i] for i in p)


def inv_perm(p: Perm) -> Perm:
    inverse = [0] * len(p)
    for i, j in enumerate(p):
        inverse[j] = i
    return tuple(inverse)


def parse_cycles(text: str, n: int) -> Perm:
    """Parse cycle notation like "(0 1 2)(3 4)" on points 0..n-1."""
    image = list(range(n))
    for chunk in text.replace(")", "").split("("):
        points = [int(tok) for tok in chunk.replace(",", " ").split()]
        for i, p in enumerate(points):
            image[p] = points[(i + 1) % len(points)]
    if sorted(image) != list(range(n)):
        raise ValueError(f"{text!r} is not a permutation of {n} points")
    return tuple(image)


def format_cycles(p: Perm) -> str:
    seen, out = set(), []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cycle, i = [], start
        while i not in seen:
            seen.add(i)
            cycle.append(str(i))
            i = p[i]
        out.append("(" + " ".join(cycle) + ")")
    return "".join(out) or "()"


class StabilizerChain:
    """Deterministic Schreier-Sims with base 0, 1, ..., n-1.

    transversals[k] maps an orbit point j of k to a permutation sending k to j
    inside the pointwise stabilizer of 0..k-1; strong[k] generates that stabilizer.
    """

    def __init__(self, degree: int):
        self.degree = degree
        ident = identity_perm(degree)
        self.identity = ident
        self.transversals: list[dict[int, Perm]] = [{k: ident} for k in range(degree)]
        self.strong: list[list[Perm]] = [[] for _ in range(degree)]

    def contains(self, perm: Perm, level: int = 0) -> bool:
        for k in range(level, self.degree):
            rep = self.transversals[k].get(perm[k])
            if rep is None:
                return False
            perm = mult_perm(perm, inv_perm(rep))
        return True

    def add_generator(self, perm: Perm):
        pending = [("sift", 0, tuple(perm))]
        while pending:
            kind, k, p = pending.pop()
            if k >= self.degree or p == self.identity:
                continue
            if kind == "sift":
                if self.contains(p, k):
                    continue
                self.strong[k].append(p)
                for sigma in list(self.transversals[k].values()):
                    pending.append(("orbit", k, mult_perm(sigma, p)))
            else:
                j = p[k]
                rep = self.transversals[k].get(j)
                if rep is None:
                    self.transversals[k][j] = p
                    for pi in list(self.strong[k]):
                        pending.append(("orbit", k, mult_perm(p, pi)))
                else:
                    pending.append(("sift", k + 1, mult_perm(p, inv_perm(rep))))

    def order(self) -> int:
        total = 1
        for t in self.transversals:
            total *= len(t)
        return total


def perm_group_order(generators: list[Perm], degree: int) -> int:
    chain = StabilizerChain(degree)
    for g in generators:
        chain.add_generator(g)
    order = chain.order()
    logger.debug(f"permutation group of degree {degree} with {len(generators)} generators has order {order}")
    return order
