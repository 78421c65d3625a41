"""Brute-force recognizers and exact invariants for small graphs.

Everything here is exponential in the worst case and meant for inputs of
a dozen or so vertices: validating test instances, certifying atoms, and
checking the coloring pipeline against exact values. Hole searches are
bounded by a node-expansion budget rather than wall-clock time so that
results are reproducible.
"""
from __future__ import annotations

import heapq
from collections.abc import Mapping
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .errors import BudgetExceeded, PartialColoring, TooLarge
from .graph import Graph, VertexSet, iter_bits, to_bits

DEFAULT_BUDGET = 2_000_000

CHROMATIC_LIMIT = 20
CLIQUE_LIMIT = 64
CUTSET_LIMIT = 14


@dataclass(frozen=True)
class HoleWitness:
    cycle: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.cycle)

    def validate(self, g: Graph) -> bool:
        c = self.cycle
        k = len(c)
        if k < 4 or len(set(c)) != k:
            return False
        for i in range(k):
            for j in range(i + 1, k):
                consecutive = j == i + 1 or (i == 0 and j == k - 1)
                if g.adjacent(c[i], c[j]) != consecutive:
                    return False
        return True


@dataclass(frozen=True)
class CapWitness:
    hole: HoleWitness
    apex: int

    def validate(self, g: Graph) -> bool:
        c = self.hole.cycle
        if self.apex in c or not self.hole.validate(g):
            return False
        hits = [i for i, v in enumerate(c) if g.adjacent(self.apex, v)]
        if len(hits) != 2:
            return False
        i, j = hits
        return j == i + 1 or (i == 0 and j == len(c) - 1)


@dataclass(frozen=True)
class ClassReport:
    even_hole: HoleWitness | None
    cap: CapWitness | None
    in_class: bool
    search_exhausted: bool

    @property
    def witness(self) -> HoleWitness | CapWitness | None:
        return self.even_hole or self.cap


class _Budget:
    __slots__ = ("limit", "used")

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def tick(self) -> None:
        self.used += 1
        if self.used > self.limit:
            raise BudgetExceeded(self.limit)


# -- holes and caps ------------------------------------------------------

def _holes(g: Graph, budget: _Budget) -> Iterator[tuple[int, ...]]:
    """Enumerate every hole once, in lexicographic order of its encoding.

    A hole is reported rooted at its smallest vertex ``r`` and oriented so
    that the vertex after ``r`` is smaller than the vertex before it.
    """
    for r in range(g.n):
        above = ~((1 << (r + 1)) - 1)
        near_root = g.neighbor_bits(r)
        for p1 in iter_bits(near_root & above):
            budget.tick()
            # frames: (path, blocked, pending candidates)
            stack = [([r, p1], 0, iter_bits(g.neighbor_bits(p1) & above & ~(1 << p1)))]
            while stack:
                path, blocked, pending = stack[-1]
                w = next(pending, None)
                if w is None:
                    stack.pop()
                    continue
                budget.tick()
                if (near_root >> w) & 1:
                    if len(path) >= 3 and w > p1:
                        yield tuple(path) + (w,)
                    continue
                last = path[-1]
                grown = blocked | g.closed_bits(last)
                cand = g.neighbor_bits(w) & above & ~grown
                if cand:
                    stack.append((path + [w], grown, iter_bits(cand)))


def iter_holes(g: Graph, budget: int = DEFAULT_BUDGET) -> Iterator[HoleWitness]:
    """All holes of ``g`` in canonical order. Raises BudgetExceeded."""
    for cycle in _holes(g, _Budget(budget)):
        yield HoleWitness(cycle)


def find_even_hole(g: Graph, budget: int = DEFAULT_BUDGET) -> HoleWitness | None:
    """Lexicographically smallest even hole, or None if the search completes without one."""
    for cycle in _holes(g, _Budget(budget)):
        if len(cycle) % 2 == 0:
            return HoleWitness(cycle)
    return None


def find_cap(g: Graph, budget: int = DEFAULT_BUDGET) -> CapWitness | None:
    """Find a cap by trying every triangle ``(w, u, v)`` as apex plus hole edge.

    For each triangle we look for an induced path from ``u`` to ``v`` of
    length at least 3 whose inner vertices avoid ``N[w]``; together with
    the edge ``uv`` it closes a hole that ``w`` sees in exactly ``u, v``.
    """
    counter = _Budget(budget)
    for u, v in g.edges:
        common = g.neighbor_bits(u) & g.neighbor_bits(v)
        for w in iter_bits(common):
            counter.tick()
            allowed = ~g.closed_bits(w)
            path = _cap_path(g, u, v, allowed, counter)
            if path is not None:
                return CapWitness(HoleWitness(path), w)
    return None


def _cap_path(g: Graph, u: int, v: int, allowed: int, counter: _Budget) -> tuple[int, ...] | None:
    near_v = g.neighbor_bits(v)
    first = g.neighbor_bits(u) & allowed & ~near_v
    stack = [([u], 0, iter_bits(first))]
    while stack:
        path, blocked, pending = stack[-1]
        x = next(pending, None)
        if x is None:
            stack.pop()
            continue
        counter.tick()
        grown = blocked | g.closed_bits(path[-1])
        if (near_v >> x) & 1:
            # x closes the hole; it must have skipped at least one vertex
            if len(path) >= 2:
                return tuple(path) + (x, v)
            continue
        cand = g.neighbor_bits(x) & allowed & ~grown
        if cand:
            stack.append((path + [x], grown, iter_bits(cand)))
    return None


def classify_membership(g: Graph, budget: int = DEFAULT_BUDGET) -> ClassReport:
    """Decide (even-hole, cap)-freeness by exhaustive search, within ``budget``."""
    exhausted = True
    even = cap = None
    try:
        even = find_even_hole(g, budget)
    except BudgetExceeded:
        exhausted = False
    try:
        cap = find_cap(g, budget)
    except BudgetExceeded:
        exhausted = False
    in_class = exhausted and even is None and cap is None
    return ClassReport(even, cap, in_class, exhausted)


def find_diamond(g: Graph) -> tuple[int, int, int, int] | None:
    """Return ``(u, v, a, b)`` with ``uv`` an edge and ``a, b`` non-adjacent common neighbours."""
    for u, v in g.edges:
        common = list(iter_bits(g.neighbor_bits(u) & g.neighbor_bits(v)))
        for a, b in combinations(common, 2):
            if not g.adjacent(a, b):
                return (u, v, a, b)
    return None


# -- chordality ----------------------------------------------------------

def mcs_order(g: Graph) -> list[int]:
    """Maximum cardinality search; returns vertices in visit order.

    Ties are broken towards the smallest vertex id.
    """
    n = g.n
    weight = [0] * n
    visited = [False] * n
    heap = [(0, v) for v in range(n)]
    order = []
    while heap:
        negw, v = heapq.heappop(heap)
        if visited[v] or -negw != weight[v]:
            continue
        visited[v] = True
        order.append(v)
        for w in g.neighbors(v):
            if not visited[w]:
                weight[w] += 1
                heapq.heappush(heap, (-weight[w], w))
    return order


def is_perfect_elimination_ordering(g: Graph, order: list[int]) -> bool:
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    for v in order:
        later = [w for w in g.neighbors(v) if pos[w] > pos[v]]
        if len(later) < 2:
            continue
        parent = min(later, key=pos.__getitem__)
        need = to_bits(later) & ~(1 << parent)
        if need & ~g.neighbor_bits(parent):
            return False
    return True


def is_chordal(g: Graph) -> list[int] | None:
    """A perfect elimination ordering of ``g`` if it is chordal, else None."""
    peo = mcs_order(g)[::-1]
    return peo if is_perfect_elimination_ordering(g, peo) else None


# -- exact invariants ----------------------------------------------------

def _max_clique_bits(g: Graph) -> int:
    best = 0
    best_size = 0
    nbrs = [g.neighbor_bits(v) for v in g.vertices()]

    def expand(clique: int, size: int, cand: int) -> None:
        nonlocal best, best_size
        if not cand:
            if size > best_size:
                best, best_size = clique, size
            return
        while cand:
            if size + cand.bit_count() <= best_size:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            expand(clique | low, size + 1, cand & nbrs[v])

    expand(0, 0, (1 << g.n) - 1)
    return best


def maximum_clique(g: Graph) -> VertexSet:
    if g.n > CLIQUE_LIMIT:
        raise TooLarge(f"exact clique search limited to n <= {CLIQUE_LIMIT}, got {g.n}")
    return tuple(iter_bits(_max_clique_bits(g)))


def exact_clique_number(g: Graph) -> int:
    return len(maximum_clique(g))


def exact_independence_number(g: Graph) -> int:
    if g.n > CLIQUE_LIMIT:
        raise TooLarge(f"exact independence search limited to n <= {CLIQUE_LIMIT}, got {g.n}")
    return exact_clique_number(g.complement())


def exact_chromatic_number(g: Graph) -> int:
    """Exact chromatic number by iterative deepening from the clique number."""
    n = g.n
    if n > CHROMATIC_LIMIT:
        raise TooLarge(f"exact coloring limited to n <= {CHROMATIC_LIMIT}, got {n}")
    if n == 0:
        return 0
    clique = maximum_clique(g)
    k = len(clique)
    while not _colorable(g, k, clique):
        k += 1
    return k


def _colorable(g: Graph, k: int, clique: VertexSet) -> bool:
    n = g.n
    color = [-1] * n
    # fixing the clique's colors removes the palette symmetry for those vertices
    for i, v in enumerate(clique):
        color[v] = i
    nbrs = [g.neighbors(v) for v in range(n)]

    def pick() -> int:
        best, best_key = -1, None
        for v in range(n):
            if color[v] != -1:
                continue
            seen = {color[w] for w in nbrs[v] if color[w] != -1}
            key = (len(seen), len(nbrs[v]))
            if best_key is None or key > best_key:
                best, best_key = v, key
        return best

    def search(top: int) -> bool:
        v = pick()
        if v == -1:
            return True
        used = {color[w] for w in nbrs[v]}
        for c in range(min(k, top + 1)):
            if c in used:
                continue
            color[v] = c
            if search(max(top, c + 1)):
                return True
        color[v] = -1
        return False

    return search(len(clique))


def check_coloring(g: Graph, c) -> bool:
    """True iff ``c`` assigns every vertex a color and no edge is monochromatic.

    ``c`` may be a Coloring (anything with a ``colors`` attribute), a
    mapping from vertex to color, or a sequence indexed by vertex.
    """
    colors = getattr(c, "colors", c)
    if isinstance(colors, Mapping):
        values = [colors.get(v) for v in g.vertices()]
    else:
        values = list(colors)
        if len(values) != g.n:
            raise PartialColoring(f"coloring has {len(values)} entries for {g.n} vertices")
    missing = [v for v, col in enumerate(values) if col is None]
    if missing:
        raise PartialColoring(f"vertices without a color: {missing[:10]}")
    return all(values[u] != values[v] for u, v in g.edges)


# -- clique cutsets ------------------------------------------------------

def _component_count(g: Graph, alive: int) -> int:
    count = 0
    while alive:
        seed = alive & -alive
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.neighbor_bits(v)
            frontier = nxt & alive & ~comp
            comp |= frontier
        alive &= ~comp
        count += 1
    return count


def find_clique_cutset_bruteforce(g: Graph) -> VertexSet | None:
    """Smallest (then lexicographically first) clique cutset, or None for atoms.

    A disconnected graph is separated by the empty clique and yields ``()``.
    """
    n = g.n
    if n > CUTSET_LIMIT:
        raise TooLarge(f"brute-force cutset search limited to n <= {CUTSET_LIMIT}, got {n}")
    full = (1 << n) - 1
    base = _component_count(g, full)
    if base > 1:
        return ()
    for size in range(1, n):
        for combo in combinations(range(n), size):
            bits = to_bits(combo)
            if any(g.closed_bits(v) & bits != bits for v in combo):
                continue
            if _component_count(g, full & ~bits) > base:
                return combo
    return None
