import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capcolor.errors import BudgetExceeded, PartialColoring, TooLarge
from capcolor.generators import c5_clique_blowup, complete, cycle, hajos, random_chordal
from capcolor.graph import Graph, from_edge_list
from capcolor.oracles import (
    CapWitness,
    HoleWitness,
    check_coloring,
    classify_membership,
    exact_chromatic_number,
    exact_clique_number,
    exact_independence_number,
    find_cap,
    find_clique_cutset_bruteforce,
    find_diamond,
    find_even_hole,
    is_chordal,
    is_perfect_elimination_ordering,
    iter_holes,
)

from checks import erdos_renyi


def naive_holes(g):
    """All holes as frozensets of vertices, by checking every vertex subset."""
    found = set()
    for k in range(4, g.n + 1):
        for s in itertools.combinations(range(g.n), k):
            if all(sum(g.adjacent(v, u) for u in s) == 2 for v in s):
                # 2-regular induced subgraph: a hole iff connected
                seen, stack = {s[0]}, [s[0]]
                while stack:
                    v = stack.pop()
                    for u in g.neighbors(v):
                        if u in s and u not in seen:
                            seen.add(u)
                            stack.append(u)
                if len(seen) == k:
                    found.add(frozenset(s))
    return found


def naive_chromatic(g):
    for k in range(0 if g.n == 0 else 1, g.n + 1):
        for colors in itertools.product(range(k), repeat=g.n):
            if all(colors[u] != colors[v] for u, v in g.edges):
                return k
    return 0


def test_even_hole_c6():
    w = find_even_hole(cycle(6))
    assert w is not None and len(w) == 6 and w.validate(cycle(6))


def test_even_hole_c5_none():
    assert find_even_hole(cycle(5)) is None


def test_even_hole_g1_none():
    assert find_even_hole(c5_clique_blowup(1)) is None


def test_even_hole_budget():
    with pytest.raises(BudgetExceeded):
        find_even_hole(cycle(9), budget=3)


def test_even_hole_is_lexicographically_smallest():
    # two disjoint 4-holes; the one on smaller ids wins
    g = from_edge_list(8, [(4, 5), (5, 6), (6, 7), (7, 4), (0, 1), (1, 2), (2, 3), (3, 0)])
    assert find_even_hole(g).cycle == (0, 1, 2, 3)


def test_holes_match_naive_enumeration():
    rng = random.Random(5)
    for _ in range(150):
        g = erdos_renyi(rng.randint(4, 9), rng.choice((0.3, 0.45, 0.6)), rng)
        holes = [frozenset(h.cycle) for h in iter_holes(g)]
        assert len(holes) == len(set(holes))
        assert set(holes) == naive_holes(g)
        even = {h for h in holes if len(h) % 2 == 0}
        assert (find_even_hole(g) is None) == (not even)


def test_cap_on_c5_plus_apex():
    g = from_edge_list(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0), (5, 1)])
    w = find_cap(g)
    assert w is not None and w.validate(g)
    assert w.apex == 5 and set(w.hole.cycle) == {0, 1, 2, 3, 4}


def test_cap_none_on_chordal_and_hajos():
    assert find_cap(random_chordal(30, 1)) is None
    assert find_cap(hajos()) is None


def test_cap_search_matches_definition():
    rng = random.Random(8)
    for _ in range(150):
        g = erdos_renyi(rng.randint(5, 9), rng.choice((0.35, 0.5, 0.65)), rng)
        expected = False
        for h in naive_holes(g):
            ring = list(h)
            for x in range(g.n):
                if x in h:
                    continue
                nb = [v for v in ring if g.adjacent(x, v)]
                if len(nb) == 2 and g.adjacent(*nb):
                    expected = True
        w = find_cap(g)
        assert (w is not None) == expected
        if w is not None:
            assert w.validate(g)


def test_witness_validation_rejects_bad_cycles():
    assert not HoleWitness((0, 1, 2)).validate(cycle(3))
    assert not HoleWitness((0, 1, 2, 3)).validate(complete(4))
    assert not CapWitness(HoleWitness((0, 1, 2, 3, 4)), 0).validate(cycle(5))


@pytest.mark.parametrize("g,in_class", [(cycle(7), True), (cycle(4), False), (complete(5), True)])
def test_classify_examples(g, in_class):
    r = classify_membership(g)
    assert r.in_class == in_class
    assert r.search_exhausted
    if not in_class:
        assert r.even_hole is not None and len(r.even_hole) == 4


def test_classify_budget_flag():
    r = classify_membership(cycle(12), budget=5)
    assert not r.in_class and not r.search_exhausted


@pytest.mark.parametrize("k", range(2, 7))
def test_classify_cycles(k):
    assert classify_membership(cycle(2 * k)).even_hole is not None
    assert classify_membership(cycle(2 * k + 1)).in_class


def test_is_chordal_examples():
    assert is_perfect_elimination_ordering(complete(4), is_chordal(complete(4)))
    assert is_chordal(cycle(4)) is None
    tree = from_edge_list(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
    assert is_perfect_elimination_ordering(tree, is_chordal(tree))


def test_chordal_implies_no_hole_or_cap():
    rng = random.Random(11)
    for _ in range(400):
        g = erdos_renyi(rng.randint(1, 9), rng.random(), rng)
        chordal = is_chordal(g) is not None
        assert chordal == (not naive_holes(g))
        if chordal:
            assert find_even_hole(g) is None and find_cap(g) is None


def test_exact_invariants_examples():
    assert exact_chromatic_number(cycle(5)) == 3
    assert exact_chromatic_number(complete(4)) == 4
    assert exact_chromatic_number(hajos()) == 4
    assert exact_clique_number(cycle(5)) == 2
    assert exact_clique_number(c5_clique_blowup(1)) == 4
    assert exact_clique_number(complete(7)) == 7
    assert exact_independence_number(c5_clique_blowup(1)) == 2
    assert exact_independence_number(cycle(5)) == 2
    assert exact_independence_number(Graph(6)) == 6
    assert exact_chromatic_number(Graph(0)) == 0


def test_exact_guards():
    with pytest.raises(TooLarge):
        exact_chromatic_number(cycle(21))
    with pytest.raises(TooLarge):
        exact_clique_number(cycle(65))
    with pytest.raises(TooLarge):
        find_clique_cutset_bruteforce(cycle(15))


def test_exact_chromatic_matches_naive():
    rng = random.Random(3)
    for _ in range(80):
        g = erdos_renyi(rng.randint(0, 7), rng.random(), rng)
        assert exact_chromatic_number(g) == naive_chromatic(g)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 11), st.floats(0, 1), st.integers(0, 2**32))
def test_invariant_relations(n, p, seed):
    g = erdos_renyi(n, p, random.Random(seed))
    omega = exact_clique_number(g)
    naive_omega = max((k for k in range(n + 1) for s in itertools.combinations(range(n), k)
                       if all(g.adjacent(u, v) for u, v in itertools.combinations(s, 2))), default=0)
    assert omega == naive_omega
    assert exact_chromatic_number(g) >= omega
    assert exact_independence_number(g) == exact_clique_number(g.complement())


def test_check_coloring_examples():
    assert check_coloring(cycle(5), [0, 1, 0, 1, 2])
    assert not check_coloring(complete(2), [0, 0])
    assert check_coloring(Graph(4), [0, 0, 0, 0])
    assert check_coloring(cycle(3), {0: 0, 1: 1, 2: 2})
    with pytest.raises(PartialColoring):
        check_coloring(cycle(3), {0: 0, 1: 1})
    with pytest.raises(PartialColoring):
        check_coloring(cycle(3), [0, 1])


def test_cutset_examples():
    bowtie = from_edge_list(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
    assert find_clique_cutset_bruteforce(bowtie) == (2,)
    assert find_clique_cutset_bruteforce(cycle(5)) is None
    assert find_clique_cutset_bruteforce(from_edge_list(4, [(0, 1), (2, 3)])) == ()


def test_find_diamond():
    diamond = from_edge_list(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    assert find_diamond(diamond) is not None
    assert find_diamond(complete(4)) is None
    assert find_diamond(cycle(5)) is None
