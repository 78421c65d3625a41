"""Coloring (even-hole, cap)-free graphs with at most floor(3/2 * omega) colors.

Pipeline: clique-cutset decomposition into atoms; per atom, strip the
universal vertices, partition the rest into twin classes and peel off
layers (one representative per class) that are triangle-free and need at
most three colors each; finally glue the atom colorings back together
along the clique separators.
"""
from __future__ import annotations

import heapq
import time
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Literal

from .decomposition import (
    Leaf,
    TwinPartition,
    clique_cutset_decompose,
    postorder,
    strip_universal_vertices,
    twin_partition,
)
from .errors import ClassViolation, NotInClass, SeparatorMismatch, TooLargeForStrict
from .graph import Graph, induced_subgraph, iter_bits
from .oracles import DEFAULT_BUDGET, classify_membership

STRICT_LIMIT = 16

Mode = Literal["strict", "permissive"]


@dataclass(frozen=True)
class Ordering:
    order: tuple[int, ...]
    beta_value: int


@dataclass(frozen=True)
class Coloring:
    """Vertex -> color map whose colors are exactly ``0..palette_size-1``."""

    colors: Mapping[int, int]
    palette_size: int

    @classmethod
    def normalized(cls, colors: Mapping[int, int] | Iterable[int]) -> Coloring:
        if not isinstance(colors, Mapping):
            colors = dict(enumerate(colors))
        rename = {c: i for i, c in enumerate(sorted(set(colors.values())))}
        return cls({v: rename[c] for v, c in colors.items()}, len(rename))

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def as_list(self, n: int | None = None) -> list[int]:
        if n is None:
            n = len(self.colors)
        return [self.colors[v] for v in range(n)]


def min_degree_last_ordering(g: Graph) -> Ordering:
    """Repeatedly remove a minimum-degree vertex and place it last among the unplaced.

    ``beta_value`` is the largest degree seen at removal time plus one,
    i.e. ``max_i (min degree of g[v_1..v_i]) + 1``. Ties go to the smallest id.
    """
    n = g.n
    deg = [g.degree(v) for v in range(n)]
    gone = [False] * n
    heap = [(deg[v], v) for v in range(n)]
    heapq.heapify(heap)
    removal = []
    beta = 0
    while heap:
        d, v = heapq.heappop(heap)
        if gone[v] or d != deg[v]:
            continue
        gone[v] = True
        removal.append(v)
        beta = max(beta, d + 1)
        for w in g.neighbors(v):
            if not gone[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return Ordering(tuple(reversed(removal)), beta)


def beta_greedy_color(g: Graph) -> Coloring:
    """Greedy smallest-available coloring along the min-degree-last ordering.

    Uses at most ``beta_value`` colors; optimal on (even-hole, diamond)-free graphs.
    """
    color: dict[int, int] = {}
    for v in min_degree_last_ordering(g).order:
        taken = {color[w] for w in g.neighbors(v) if w in color}
        c = 0
        while c in taken:
            c += 1
        color[v] = c
    return Coloring(color, max(color.values(), default=-1) + 1)


def clique_number_c4free(g: Graph, budget_factor: int = 1) -> tuple[int, bool]:
    """Clique number via maximal-clique enumeration with pivoting.

    C4-free graphs have O(n^2) maximal cliques, so the enumeration stops
    after ``budget_factor * n^2`` of them. Hitting that limit returns the
    best size found with ``exact=False``; the input was then most likely
    not C4-free.
    """
    n = g.n
    if n == 0:
        return 0, True
    limit = max(1, budget_factor * n * n)
    nbrs = [g.neighbor_bits(v) for v in range(n)]
    best = 0
    found = 0

    class _Stop(Exception):
        pass

    def expand(size: int, cand: int, excl: int) -> None:
        nonlocal best, found
        if not cand:
            if not excl:
                found += 1
                best = max(best, size)
                if found > limit:
                    raise _Stop
            return
        pivot = max(iter_bits(cand | excl), key=lambda u: (cand & nbrs[u]).bit_count())
        for v in iter_bits(cand & ~nbrs[pivot]):
            expand(size + 1, cand & nbrs[v], excl & nbrs[v])
            cand &= ~(1 << v)
            excl |= 1 << v

    # degeneracy order keeps each top-level candidate set small
    removal = min_degree_last_ordering(g).order[::-1]
    later = (1 << n) - 1
    try:
        for v in removal:
            later &= ~(1 << v)
            expand(1, nbrs[v] & later, nbrs[v] & ~later)
    except _Stop:
        return best, False
    return best, True


# -- peeling -------------------------------------------------------------

@dataclass(frozen=True)
class PeelResult:
    coloring: Coloring
    layers: tuple[tuple[int, ...], ...]
    final_independent: tuple[int, ...]
    violations: tuple[str, ...] = ()


def _has_triangle(g: Graph) -> bool:
    return any(g.neighbor_bits(u) & g.neighbor_bits(v) for u, v in g.edges)


def peel_layers(g: Graph, tp: TwinPartition, strict: bool = True) -> PeelResult:
    """Color ``g`` by repeatedly removing one vertex per twin class.

    The partition is fixed up front; classes only shrink. A class that is a
    whole component of the remainder with two or more vertices gives two
    vertices to the layer. Each layer is colored greedily with fresh
    colors. An edgeless remainder takes a single fresh color and ends the
    loop. A layer with a triangle or needing more than three colors raises
    ClassViolation when ``strict``, and is otherwise recorded and kept.
    """
    remaining = [list(c) for c in tp.classes]
    q = tp.quotient
    color: dict[int, int] = {}
    layers: list[tuple[int, ...]] = []
    final: tuple[int, ...] = ()
    violations: list[str] = []
    base = 0
    while True:
        live = [i for i, c in enumerate(remaining) if c]
        if not live:
            break
        live_bits = 0
        for i in live:
            live_bits |= 1 << i
        isolated = {i for i in live if not q.neighbor_bits(i) & live_bits}
        if len(isolated) == len(live) and all(len(remaining[i]) == 1 for i in live):
            final = tuple(sorted(remaining[i][0] for i in live))
            for v in final:
                color[v] = base
            base += 1
            break
        layer = []
        for i in live:
            take = 2 if i in isolated and len(remaining[i]) >= 2 else 1
            layer.extend(remaining[i][:take])
            del remaining[i][:take]
        layer.sort()
        sub, mapping = induced_subgraph(g, layer)
        local = beta_greedy_color(sub)
        problem = None
        if _has_triangle(sub):
            problem = f"layer {layer} contains a triangle"
        elif local.palette_size > 3:
            problem = f"layer {layer} needs {local.palette_size} colors"
        if problem is not None:
            if strict:
                raise ClassViolation(problem, tuple(layer))
            violations.append(problem)
        for v in layer:
            color[v] = base + local.colors[mapping[v]]
        base += local.palette_size
        layers.append(tuple(layer))
    return PeelResult(Coloring(color, base), tuple(layers), final, tuple(violations))


def peel_color_core(g: Graph, tp: TwinPartition) -> Coloring:
    """Color an atom without universal vertices; raises ClassViolation on a bad layer."""
    return peel_layers(g, tp, strict=True).coloring


def _color_atom(a: Graph, strict: bool) -> tuple[Coloring, tuple[str, ...]]:
    remaining, removed = strip_universal_vertices(a)
    color: dict[int, int] = {}
    base = 0
    violations: tuple[str, ...] = ()
    if remaining:
        sub, mapping = induced_subgraph(a, remaining)
        res = peel_layers(sub, twin_partition(sub), strict=strict)
        for v in remaining:
            color[v] = res.coloring.colors[mapping[v]]
        base = res.coloring.palette_size
        violations = res.violations
    for v in removed:
        color[v] = base
        base += 1
    return Coloring(color, base), violations


def color_atom(a: Graph) -> Coloring:
    """Color an atom: peel the non-universal part, then one new color per universal vertex."""
    return _color_atom(a, strict=True)[0]


# -- recombination -------------------------------------------------------

def _merge_into(keep: dict[int, int], keep_size: int, other: Mapping[int, int],
                other_size: int, sep: Iterable[int]) -> int:
    """Rename ``other`` to agree with ``keep`` on ``sep`` and copy it into ``keep``.

    Returns the merged palette size.
    """
    size = max(keep_size, other_size)
    rename = {}
    fixed = set()
    for v in sep:
        rename[other[v]] = keep[v]
        fixed.add(keep[v])
    spare = (c for c in range(size) if c not in fixed)
    for v, c in other.items():
        if c not in rename:
            rename[c] = next(spare)
        keep[v] = rename[c]
    return size


def merge_on_separator(c1: Coloring, c2: Coloring, k: Iterable[int]) -> Coloring:
    """Combine colorings of two sides of a clique separator ``k``.

    ``c1`` is kept as is; the colors of ``c2`` are permuted so that both
    agree on ``k``. The result uses ``max`` of the two palette sizes.
    """
    k = set(k)
    shared = set(c1.colors) & set(c2.colors)
    if shared != k:
        raise SeparatorMismatch(f"colorings overlap on {sorted(shared)}, separator is {sorted(k)}")
    for c in (c1, c2):
        if len({c.colors[v] for v in k}) != len(k):
            raise SeparatorMismatch("separator is not colored injectively")
    merged = dict(c1.colors)
    size = _merge_into(merged, c1.palette_size, c2.colors, c2.palette_size, k)
    return Coloring(merged, size)


# -- driver --------------------------------------------------------------

@dataclass(frozen=True)
class ColoringReport:
    coloring: Coloring
    colors_used: int
    omega_estimate: int
    omega_exact: bool
    bound: int
    ratio: Fraction | None
    class_violation: str | None
    atoms: int
    timings: dict[str, float] = field(default_factory=dict)

    def to_json(self) -> dict:
        n = len(self.coloring.colors)
        return {
            "colors_used": self.colors_used,
            "omega": self.omega_estimate,
            "omega_exact": self.omega_exact,
            "bound": self.bound,
            "ratio": None if self.ratio is None else str(self.ratio),
            "class_violation": self.class_violation,
            "atoms": self.atoms,
            "timings_ms": {k: round(v * 1000, 3) for k, v in self.timings.items()},
            "coloring": self.coloring.as_list(n),
        }


def color(g: Graph, mode: Mode = "permissive", budget: int = DEFAULT_BUDGET) -> ColoringReport:
    """Color ``g`` and report colors used against ``floor(3/2 * omega)``.

    In strict mode the input must be small enough for the brute-force
    membership check and must pass it. In permissive mode any graph is
    accepted; a failed layer guarantee is reported in ``class_violation``
    and the coloring stays proper.
    """
    if mode not in ("strict", "permissive"):
        raise ValueError(f"unknown mode {mode!r}")
    timings: dict[str, float] = {}
    clock = time.perf_counter

    if mode == "strict":
        if g.n > STRICT_LIMIT:
            raise TooLargeForStrict(f"strict mode needs n <= {STRICT_LIMIT}, got {g.n}")
        t = clock()
        report = classify_membership(g, budget)
        timings["membership"] = clock() - t
        if not report.search_exhausted:
            raise TooLargeForStrict("membership search exceeded its budget")
        if not report.in_class:
            kind = "even hole" if report.even_hole else "cap"
            raise NotInClass(f"graph contains an {kind}", report.witness)

    t = clock()
    tree = clique_cutset_decompose(g)
    timings["decompose"] = clock() - t

    t = clock()
    strict = mode == "strict"
    results: dict[int, tuple[dict[int, int], int]] = {}
    problems: list[str] = []
    atoms = 0
    merge_time = 0.0
    for node in postorder(tree.root):
        if isinstance(node, Leaf):
            atoms += 1
            sub, _ = induced_subgraph(g, node.atom)
            local, bad = _color_atom(sub, strict)
            problems.extend(f"atom {list(node.atom)}: {p}" for p in bad)
            results[id(node)] = ({node.atom[i]: c for i, c in local.colors.items()}, local.palette_size)
            continue
        m0 = clock()
        left, lsize = results.pop(id(node.left))
        right, rsize = results.pop(id(node.right))
        # rename whichever side is smaller
        if len(left) < len(right):
            left, lsize, right, rsize = right, rsize, left, lsize
        size = _merge_into(left, lsize, right, rsize, node.separator)
        results[id(node)] = (left, size)
        merge_time += clock() - m0
    timings["color_atoms"] = clock() - t - merge_time
    timings["merge"] = merge_time

    final = Coloring.normalized(results.popitem()[1][0]) if results else Coloring({}, 0)

    t = clock()
    omega, exact = clique_number_c4free(g)
    timings["omega"] = clock() - t

    k = final.palette_size
    return ColoringReport(
        coloring=final,
        colors_used=k,
        omega_estimate=omega,
        omega_exact=exact,
        bound=(3 * omega) // 2,
        ratio=Fraction(k, omega) if exact and omega else None,
        class_violation="; ".join(problems) or None,
        atoms=atoms,
        timings=timings,
    )
