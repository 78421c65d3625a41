"""Structural preprocessing: clique-cutset decomposition, twin classes, universal vertices."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

from .graph import Graph, VertexSet, connected_components, induced_subgraph, to_bits
from .oracles import is_chordal


@dataclass(frozen=True)
class EliminationOrdering:
    order: tuple[int, ...]
    fill: frozenset[tuple[int, int]]

    def filled_graph(self, g: Graph) -> Graph:
        return Graph(g.n, list(g.edges) + sorted(self.fill))


def lexm_minimal_ordering(g: Graph) -> EliminationOrdering:
    """LEX M: a minimal elimination ordering and its fill, in O(nm).

    Vertices are numbered from n down to 1; at each step the unnumbered
    vertex with the lexicographically largest label is picked (smallest id
    on ties). Every unnumbered ``z`` reachable from it through unnumbered
    vertices with labels strictly below ``label(z)`` gets the current
    number appended to its label, and becomes a fill neighbour if it was
    not adjacent already. Labels are kept as integer ranks.
    """
    n = g.n
    label = [0] * n
    numbered = [False] * n
    order: list[int] = [0] * n
    fill: set[tuple[int, int]] = set()
    for i in range(n - 1, -1, -1):
        v = max((u for u in range(n) if not numbered[u]), key=lambda u: (label[u], -u))
        numbered[v] = True
        order[i] = v
        reached = numbered[:]
        top = max((label[u] for u in range(n) if not numbered[u]), default=-1)
        reach: list[list[int]] = [[] for _ in range(top + 1)]
        updated = []
        for w in g.neighbors(v):
            if not reached[w]:
                reached[w] = True
                reach[label[w]].append(w)
                updated.append(w)
        for j in range(top + 1):
            bucket = reach[j]
            while bucket:
                w = bucket.pop()
                for z in g.neighbors(w):
                    if reached[z]:
                        continue
                    reached[z] = True
                    if label[z] > j:
                        reach[label[z]].append(z)
                        updated.append(z)
                        fill.add((min(v, z), max(v, z)))
                    else:
                        bucket.append(z)
        bump = [0] * n
        for z in updated:
            bump[z] = 1
        keys = sorted({2 * label[u] + bump[u] for u in range(n) if not numbered[u]})
        rank = {k: r for r, k in enumerate(keys)}
        for u in range(n):
            if not numbered[u]:
                label[u] = rank[2 * label[u] + bump[u]]
    return EliminationOrdering(tuple(order), frozenset(fill))


# -- decomposition tree --------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    atom: VertexSet


@dataclass(frozen=True)
class Split:
    separator: VertexSet
    left: "Node"
    right: "Node"


Node = Union[Leaf, Split]


@dataclass(frozen=True)
class DecompositionTree:
    """Binary clique-separator tree. ``root`` is None only for the empty graph.

    The tree is left-deep: each split keeps the rest of the graph on the
    left and the atom cut off at that point of the scan on the right.
    """

    root: Node | None

    def nodes(self) -> Iterator[Node]:
        """Preorder walk (iterative; these trees can be thousands deep)."""
        stack = [self.root] if self.root is not None else []
        while stack:
            node = stack.pop()
            yield node
            if isinstance(node, Split):
                stack.append(node.right)
                stack.append(node.left)

    def leaves(self) -> list[VertexSet]:
        return [node.atom for node in self.nodes() if isinstance(node, Leaf)]

    def splits(self) -> list[Split]:
        return [node for node in self.nodes() if isinstance(node, Split)]

    def vertex_sets(self) -> dict[int, frozenset[int]]:
        """Vertex set of every node, keyed by ``id(node)``."""
        out: dict[int, frozenset[int]] = {}
        for node in postorder(self.root):
            if isinstance(node, Leaf):
                out[id(node)] = frozenset(node.atom)
            else:
                out[id(node)] = out[id(node.left)] | out[id(node.right)]
        return out

    def to_json(self) -> dict:
        """Flat node table; children are referenced by index."""
        table: list[dict] = []
        index: dict[int, int] = {}
        for node in self.nodes():
            index[id(node)] = len(table)
            table.append({})
        for node in self.nodes():
            entry = table[index[id(node)]]
            if isinstance(node, Leaf):
                entry.update(type="atom", atom=list(node.atom))
            else:
                entry.update(
                    type="split",
                    separator=list(node.separator),
                    left=index[id(node.left)],
                    right=index[id(node.right)],
                )
        return {"root": 0 if table else None, "nodes": table}

    def to_text(self) -> str:
        lines = []
        stack = [(self.root, 0)] if self.root is not None else []
        while stack:
            node, depth = stack.pop()
            pad = "  " * depth
            if isinstance(node, Leaf):
                lines.append(f"{pad}atom {list(node.atom)}")
            else:
                lines.append(f"{pad}separator {list(node.separator)}")
                stack.append((node.right, depth + 1))
                stack.append((node.left, depth + 1))
        return "\n".join(lines)


def postorder(root: Node | None) -> Iterator[Node]:
    if root is None:
        return
    stack: list[tuple[Node, bool]] = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if isinstance(node, Leaf) or expanded:
            yield node
        else:
            stack.append((node, True))
            stack.append((node.right, False))
            stack.append((node.left, False))


def clique_cutset_decompose(g: Graph) -> DecompositionTree:
    """Split ``g`` along clique separators until only atoms remain.

    Components are separated first by empty separators. Each component is
    then scanned along a minimal elimination ordering: when the higher
    filled neighbourhood ``S`` of the current vertex ``x`` is a clique of
    ``g`` and separates what is left, the component of ``x`` in the
    remainder minus ``S`` is split off together with ``S`` as an atom.
    """
    parts = [_decompose_connected(g, comp) for comp in connected_components(g).components]
    if not parts:
        return DecompositionTree(None)
    root = parts[-1]
    for part in reversed(parts[:-1]):
        root = Split((), root, part)
    return DecompositionTree(root)


def _decompose_connected(g: Graph, comp: VertexSet) -> Node:
    if len(comp) == g.n:
        h, back = g, None
    else:
        h, _ = induced_subgraph(g, comp)
        back = comp
    pieces = _tarjan_scan(h)

    def lift(vs) -> VertexSet:
        if back is None:
            return tuple(sorted(vs))
        return tuple(sorted(back[v] for v in vs))

    root: Node = Leaf(lift(pieces[-1][1]))
    for sep, atom in reversed(pieces[:-1]):
        root = Split(lift(sep), root, Leaf(lift(atom)))
    return root


def _tarjan_scan(h: Graph) -> list[tuple[list[int], list[int]]]:
    """Return ``[(separator, atom), ..., ([], final_atom)]`` for a connected graph.

    A split at ``x`` is only taken when the separator is a minimal separator
    of what is left: the component of ``x`` and at least one other
    component see all of it. Without that check the scan can cut along a
    clique that is not minimal (or reuse one) and emit a piece that lies
    inside another atom. For chordal inputs the ordering comes from maximum
    cardinality search, where the search labels identify those vertices
    directly.
    """
    n = h.n
    peo = is_chordal(h)
    if peo is not None:
        # a perfect elimination ordering has no fill, so it is minimal
        order: tuple[int, ...] = tuple(peo)
        fill: frozenset[tuple[int, int]] = frozenset()
    else:
        elim = lexm_minimal_ordering(h)
        order, fill = elim.order, elim.fill
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    extra: list[list[int]] = [[] for _ in range(n)]
    for u, v in fill:
        extra[u].append(v)
        extra[v].append(u)
    madj = [
        [w for w in h.neighbors(x) if pos[w] > pos[x]] + [w for w in extra[x] if pos[w] > pos[x]]
        for x in range(n)
    ]
    generators = _mcs_generators(order, madj) if peo is not None else None

    alive = [True] * n
    alive_count = n
    in_sep = [False] * n
    pieces: list[tuple[list[int], list[int]]] = []
    for x in order:
        if not alive[x] or (generators is not None and x not in generators):
            continue
        sep = [w for w in madj[x] if alive[w]]
        bits = to_bits(sep)
        if not sep or any(h.closed_bits(s) & bits != bits for s in sep):
            continue
        for s in sep:
            in_sep[s] = True
        comp, touched = _component(h, x, alive, in_sep)
        if generators is None:
            split = touched == len(sep) and _has_other_full_component(h, comp, sep, alive, in_sep)
        else:
            split = len(comp) + len(sep) < alive_count
        for s in sep:
            in_sep[s] = False
        if split:
            for v in comp:
                alive[v] = False
            alive_count -= len(comp)
            pieces.append((sep, list(comp) + sep))
    pieces.append(([], [v for v in range(n) if alive[v]]))
    return pieces


def _component(h: Graph, x: int, alive: list[bool], in_sep: list[bool]) -> tuple[set[int], int]:
    """Component of ``x`` among alive non-separator vertices, and how many separator vertices it touches."""
    seen = {x}
    touched: set[int] = set()
    stack = [x]
    while stack:
        v = stack.pop()
        for w in h.neighbors(v):
            if not alive[w] or w in seen:
                continue
            if in_sep[w]:
                touched.add(w)
            else:
                seen.add(w)
                stack.append(w)
    return seen, len(touched)


def _has_other_full_component(
    h: Graph, comp: set[int], sep: list[int], alive: list[bool], in_sep: list[bool]
) -> bool:
    done = set(comp)
    for root in range(h.n):
        if not alive[root] or in_sep[root] or root in done:
            continue
        other, touched = _component(h, root, alive, in_sep)
        if touched == len(sep):
            return True
        done |= other
    return False


def _mcs_generators(order: tuple[int, ...], madj: list[list[int]]) -> set[int]:
    """Minimal-separator generators of a maximum cardinality search ordering.

    Walking the search order (the reverse of ``order``), a vertex whose
    number of already-visited neighbours does not exceed that of the
    vertex visited just before it opens a new maximal clique, and its
    visited neighbourhood is a minimal separator.
    """
    out = set()
    for x, succ in zip(order, order[1:]):
        if madj[x] and len(madj[x]) <= len(madj[succ]):
            out.add(x)
    return out


# -- twins and universal vertices ----------------------------------------

@dataclass(frozen=True)
class TwinPartition:
    classes: tuple[VertexSet, ...]
    class_of: tuple[int, ...]
    quotient: Graph

    def __len__(self) -> int:
        return len(self.classes)


def twin_partition(g: Graph) -> TwinPartition:
    """Group vertices by closed neighbourhood; classes ordered by smallest member.

    The closed neighbourhood bitset is the dictionary key, so hashing picks
    the bucket and int equality does the exact comparison.
    """
    index: dict[int, int] = {}
    classes: list[list[int]] = []
    class_of = [0] * g.n
    for v in g.vertices():
        key = g.closed_bits(v)
        c = index.get(key)
        if c is None:
            c = index[key] = len(classes)
            classes.append([])
        classes[c].append(v)
        class_of[v] = c
    qedges = set()
    for u, v in g.edges:
        a, b = class_of[u], class_of[v]
        if a != b:
            qedges.add((min(a, b), max(a, b)))
    quotient = Graph(len(classes), sorted(qedges))
    return TwinPartition(tuple(tuple(c) for c in classes), tuple(class_of), quotient)


def strip_universal_vertices(g: Graph) -> tuple[VertexSet, list[int]]:
    """Split off every vertex adjacent to all others in ``g`` itself.

    Universality is judged in ``g``, not in the shrinking remainder; no
    vertex of the remainder can be universal in it, since every removed
    vertex is adjacent to it as well.
    """
    full = g.n - 1
    removed = [v for v in g.vertices() if g.degree(v) == full]
    gone = set(removed)
    remaining = tuple(v for v in g.vertices() if v not in gone)
    return remaining, removed
