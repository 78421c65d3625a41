"""Immutable simple undirected graphs on dense integer vertex ids.

Vertices are ``0..n-1``. Adjacency is kept as sorted neighbour tuples for
iteration and as Python ints used as bitsets for O(1) adjacency tests and
fast clique checks. Python ints are arbitrary precision, so the bitsets
have no upper bound on ``n``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import CountMismatch, DuplicateEdge, InvalidEdge, InvalidVertex, ParseError

Edge = tuple[int, int]
VertexSet = tuple[int, ...]


def iter_bits(bits: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``bits`` in ascending order."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def to_bits(vertices: Iterable[int]) -> int:
    bits = 0
    for v in vertices:
        bits |= 1 << v
    return bits


class Graph:
    """A finite simple undirected graph. Instances are never mutated."""

    __slots__ = ("_n", "_edges", "_adj", "_bits")

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if n < 0:
            raise InvalidVertex(f"vertex count must be nonnegative, got {n}")
        adj: list[list[int]] = [[] for _ in range(n)]
        normalized = []
        seen = set()
        for pair in edges:
            u, v = pair
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidVertex(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise InvalidEdge(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise DuplicateEdge(f"duplicate edge {e}")
            seen.add(e)
            normalized.append(e)
            adj[u].append(v)
            adj[v].append(u)
        normalized.sort()
        self._n = n
        self._edges: tuple[Edge, ...] = tuple(normalized)
        self._adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self._bits: list[int | None] = [None] * n

    # -- basic queries -------------------------------------------------
    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> tuple[Edge, ...]:
        """Edges as ``(u, v)`` with ``u < v``, sorted lexicographically."""
        return self._edges

    def vertices(self) -> range:
        return range(self._n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def neighbor_bits(self, v: int) -> int:
        b = self._bits[v]
        if b is None:
            b = to_bits(self._adj[v])
            self._bits[v] = b
        return b

    def closed_bits(self, v: int) -> int:
        return self.neighbor_bits(v) | (1 << v)

    def adjacent(self, u: int, v: int) -> bool:
        return (self.neighbor_bits(u) >> v) & 1 == 1

    def complement(self) -> Graph:
        n = self._n
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if not self.adjacent(u, v)]
        return Graph(n, edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.m})"


@dataclass(frozen=True)
class ComponentPartition:
    component_of: tuple[int, ...]
    components: tuple[VertexSet, ...]

    def __len__(self) -> int:
        return len(self.components)


def from_edge_list(n: int, pairs: Iterable[Sequence[int]]) -> Graph:
    """Build a graph, rejecting self-loops, duplicates and out-of-range ids."""
    return Graph(n, (tuple(p) for p in pairs))


def _check_members(g: Graph, s: Iterable[int]) -> VertexSet:
    members = tuple(sorted(set(s)))
    for v in members:
        if not 0 <= v < g.n:
            raise InvalidVertex(f"vertex {v} outside 0..{g.n - 1}")
    return members


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Return ``(g[s], mapping)`` where ``mapping`` sends old ids to new ids.

    New ids follow the ascending order of the old ones.
    """
    members = _check_members(g, s)
    mapping = {v: i for i, v in enumerate(members)}
    edges = []
    for v in members:
        i = mapping[v]
        for w in g.neighbors(v):
            if w > v:
                j = mapping.get(w)
                if j is not None:
                    edges.append((i, j))
    return Graph(len(members), edges), mapping


def connected_components(g: Graph) -> ComponentPartition:
    """Components numbered by their smallest vertex."""
    comp = [-1] * g.n
    blocks: list[VertexSet] = []
    for root in g.vertices():
        if comp[root] != -1:
            continue
        cid = len(blocks)
        comp[root] = cid
        queue = deque([root])
        members = [root]
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if comp[w] == -1:
                    comp[w] = cid
                    members.append(w)
                    queue.append(w)
        blocks.append(tuple(sorted(members)))
    return ComponentPartition(tuple(comp), tuple(blocks))


def is_clique_set(g: Graph, s: Iterable[int]) -> bool:
    members = _check_members(g, s)
    bits = to_bits(members)
    return all(g.closed_bits(v) & bits == bits for v in members)


# -- DIMACS --------------------------------------------------------------

def parse_dimacs(text: str | bytes) -> Graph:
    """Parse a DIMACS ``.col`` graph (``p edge n m`` header, 1-based ``e`` lines)."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8: {exc}") from None
    n = declared_m = None
    pairs: list[Edge] = []
    seen: dict[Edge, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise ParseError("second problem line", lineno)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ParseError(f"malformed problem line {line!r}", lineno)
            n, declared_m = _ints(parts[2:], lineno)
            if n < 0 or declared_m < 0:
                raise ParseError("negative counts in problem line", lineno)
        elif tag == "e":
            if n is None:
                raise ParseError("edge line before problem line", lineno)
            if len(parts) != 3:
                raise ParseError(f"malformed edge line {line!r}", lineno)
            u, v = _ints(parts[1:], lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise InvalidVertex(f"line {lineno}: endpoint outside 1..{n}")
            if u == v:
                raise InvalidEdge(f"line {lineno}: self-loop at vertex {u}")
            e = (min(u, v) - 1, max(u, v) - 1)
            if e in seen:
                raise DuplicateEdge(f"line {lineno}: duplicate of edge on line {seen[e]}")
            seen[e] = lineno
            pairs.append(e)
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise ParseError("missing 'p edge n m' line")
    if len(pairs) != declared_m:
        raise CountMismatch(f"header declares {declared_m} edges, found {len(pairs)}")
    return Graph(n, pairs)


def _ints(tokens: Sequence[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def write_dimacs(g: Graph) -> bytes:
    """Canonical DIMACS text: header, then edges sorted by (min, max), LF endings."""
    lines = [f"p edge {g.n} {g.m}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges)
    return ("\n".join(lines) + "\n").encode("ascii")
