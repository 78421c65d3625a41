"""Deterministic extremal families and seeded random instances."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import InvalidParameter
from .graph import Graph
from .oracles import DEFAULT_BUDGET, classify_membership

FAMILIES = ("cycle", "complete", "hajos", "gk", "blowup", "random_chordal", "random_in_class")

IN_CLASS_LIMIT = 14


@dataclass(frozen=True)
class GenSpec:
    family: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def build(self) -> Graph | None:
        p = self.params
        if self.family == "cycle":
            return cycle(p["n"])
        if self.family == "complete":
            return complete(p["n"])
        if self.family == "hajos":
            return hajos()
        if self.family == "gk":
            return c5_clique_blowup(p["k"])
        if self.family == "blowup":
            return blowup(cycle(len(p["sizes"])), p["sizes"])
        if self.family == "random_chordal":
            return random_chordal(p["n"], self.seed, p.get("max_attach", 20))
        if self.family == "random_in_class":
            return random_in_class(p["n"], p["p"], self.seed, p.get("max_tries", 100))
        raise InvalidParameter(f"unknown family {self.family!r}; expected one of {FAMILIES}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidParameter(f"a cycle needs at least 3 vertices, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 0:
        raise InvalidParameter(f"n must be nonnegative, got {n}")
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def hajos() -> Graph:
    """Hajos join of two K4's on 7 vertices.

    Ids: x=0, y1=1, a=2, b=3, y2=4, c=5, d=6. Both K4's share ``x``; the
    edges x-y1 and x-y2 are dropped and y1-y2 is added.
    """
    x, y1, a, b, y2, c, d = range(7)
    edges = [(x, a), (x, b), (a, b), (a, y1), (b, y1),
             (x, c), (x, d), (c, d), (c, y2), (d, y2),
             (y1, y2)]
    return Graph(7, edges)


def blowup(g: Graph, sizes: Sequence[int]) -> Graph:
    """Replace each vertex ``v`` by a clique of ``sizes[v]`` vertices.

    Cliques of adjacent vertices are made complete to each other, all other
    pairs anti-complete.
    """
    if len(sizes) != g.n:
        raise InvalidParameter(f"need {g.n} sizes, got {len(sizes)}")
    if any(s < 1 for s in sizes):
        raise InvalidParameter("every blow-up size must be at least 1")
    start = [0] * g.n
    total = 0
    for v, s in enumerate(sizes):
        start[v] = total
        total += s
    block = [range(start[v], start[v] + sizes[v]) for v in range(g.n)]
    edges = []
    for v in range(g.n):
        members = block[v]
        edges.extend((i, j) for i in members for j in members if i < j)
    for u, v in g.edges:
        edges.extend((i, j) for i in block[u] for j in block[v])
    return Graph(total, edges)


def c5_clique_blowup(k: int) -> Graph:
    """The 5-hole with every vertex replaced by a clique of size 2k."""
    if k < 1:
        raise InvalidParameter(f"k must be positive, got {k}")
    return blowup(cycle(5), [2 * k] * 5)


def random_chordal(n: int, seed: int, max_attach: int = 20) -> Graph:
    """Grow a chordal graph: each new vertex attaches to a random clique.

    The clique is grown greedily inside the neighbourhood of a random
    existing vertex up to a random target size in ``1..max_attach``. Every
    new vertex is simplicial when added, so reversing the insertion order
    gives a perfect elimination ordering.
    """
    if n < 1:
        raise InvalidParameter(f"n must be positive, got {n}")
    rng = random.Random(seed)
    adj: list[set[int]] = [set()]
    edges = []
    for v in range(1, n):
        anchor = rng.randrange(v)
        target = rng.randint(1, max_attach)
        clique = [anchor]
        pool = sorted(adj[anchor])
        rng.shuffle(pool)
        for w in pool:
            if len(clique) >= target:
                break
            if all(w in adj[c] for c in clique):
                clique.append(w)
        adj.append(set(clique))
        for c in clique:
            adj[c].add(v)
            edges.append((c, v))
    return Graph(n, edges)


def erdos_renyi(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_in_class(n: int, edge_prob: float, seed: int, max_tries: int = 100,
                    budget: int = DEFAULT_BUDGET) -> Graph | None:
    """First G(n, p) draw that the exhaustive oracle certifies (even-hole, cap)-free."""
    if n > IN_CLASS_LIMIT:
        raise InvalidParameter(f"rejection sampling is limited to n <= {IN_CLASS_LIMIT}")
    if not 0.0 <= edge_prob <= 1.0:
        raise InvalidParameter(f"edge probability must be in [0, 1], got {edge_prob}")
    rng = random.Random(seed)
    for _ in range(max_tries):
        g = erdos_renyi(n, edge_prob, rng)
        if classify_membership(g, budget).in_class:
            return g
    return None
