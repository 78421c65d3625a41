import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capcolor.coloring import (
    Coloring,
    beta_greedy_color,
    clique_number_c4free,
    color,
    color_atom,
    merge_on_separator,
    min_degree_last_ordering,
    peel_color_core,
    peel_layers,
)
from capcolor.decomposition import twin_partition
from capcolor.errors import ClassViolation, NotInClass, SeparatorMismatch, TooLargeForStrict
from capcolor.generators import blowup, c5_clique_blowup, complete, cycle, hajos, random_chordal
from capcolor.graph import Graph, from_edge_list
from capcolor.oracles import (
    check_coloring,
    exact_chromatic_number,
    exact_clique_number,
    find_diamond,
    find_even_hole,
)

from checks import erdos_renyi, in_class_sample

TREE6 = from_edge_list(6, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)])


def test_ordering_examples():
    assert min_degree_last_ordering(cycle(5)).beta_value == 3
    assert min_degree_last_ordering(complete(4)).beta_value == 4
    assert min_degree_last_ordering(Graph(5)).beta_value == 1
    assert min_degree_last_ordering(Graph(0)).beta_value == 0


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 12), st.floats(0, 1), st.integers(0, 2**32))
def test_ordering_invariants(n, p, seed):
    g = erdos_renyi(n, p, random.Random(seed))
    o = min_degree_last_ordering(g)
    assert sorted(o.order) == list(range(n))
    beta = 0
    for i in range(n):
        prefix = set(o.order[: i + 1])
        deg = {v: sum(1 for u in g.neighbors(v) if u in prefix) for v in prefix}
        assert deg[o.order[i]] == min(deg.values())
        beta = max(beta, min(deg.values()) + 1)
    assert o.beta_value == beta
    c = beta_greedy_color(g)
    assert check_coloring(g, c)
    assert c.palette_size <= o.beta_value


def test_beta_greedy_examples():
    assert beta_greedy_color(TREE6).palette_size == 2
    assert beta_greedy_color(cycle(5)).palette_size == exact_chromatic_number(cycle(5)) == 3
    assert beta_greedy_color(complete(4)).palette_size == 4


def test_beta_greedy_optimal_on_diamond_free():
    rng = random.Random(9)
    seen = 0
    while seen < 60:
        g = erdos_renyi(rng.randint(1, 10), rng.choice((0.2, 0.35, 0.5)), rng)
        if find_diamond(g) is None and find_even_hole(g) is None:
            assert beta_greedy_color(g).palette_size == exact_chromatic_number(g)
            seen += 1


def test_clique_number_examples():
    assert clique_number_c4free(c5_clique_blowup(1)) == (4, True)
    assert clique_number_c4free(complete(6)) == (6, True)
    assert clique_number_c4free(cycle(5)) == (2, True)
    assert clique_number_c4free(Graph(0)) == (0, True)


def test_clique_number_budget_trips_on_dense_c4_graphs():
    # complement of a perfect matching on 2k vertices has 2^k maximal cliques
    k = 9
    g = Graph(2 * k, [(u, v) for u in range(2 * k) for v in range(u + 1, 2 * k) if v != u + k])
    omega, exact = clique_number_c4free(g)
    assert not exact and omega <= k


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 12), st.floats(0, 1), st.integers(0, 2**32))
def test_clique_number_exact_when_flagged(n, p, seed):
    g = erdos_renyi(n, p, random.Random(seed))
    omega, exact = clique_number_c4free(g)
    if exact:
        assert omega == exact_clique_number(g)
    else:
        assert omega <= exact_clique_number(g)


def test_peel_c5():
    res = peel_layers(cycle(5), twin_partition(cycle(5)))
    assert res.layers == ((0, 1, 2, 3, 4),)
    assert res.coloring.palette_size == 3


def test_peel_g1_trace():
    g = c5_clique_blowup(1)
    res = peel_layers(g, twin_partition(g))
    assert res.layers == ((0, 2, 4, 6, 8), (1, 3, 5, 7, 9))
    assert res.final_independent == ()
    assert res.coloring.palette_size == 6
    assert check_coloring(g, res.coloring)
    assert exact_chromatic_number(g) == 5


def test_peel_blowup_21111():
    g = blowup(cycle(5), [2, 1, 1, 1, 1])
    res = peel_layers(g, twin_partition(g))
    assert res.layers == ((0, 2, 3, 4, 5),)
    assert res.final_independent == (1,)
    assert res.coloring.palette_size == 4 == 3 * exact_clique_number(g) // 2
    assert check_coloring(g, res.coloring)


def test_peel_isolated_class_gives_two():
    # after the first layer only the size-3 class of this C5 blow-up survives
    g = blowup(cycle(5), [4, 1, 1, 1, 1])
    res = peel_layers(g, twin_partition(g))
    assert res.layers[0] == (0, 4, 5, 6, 7)
    assert res.layers[1] == (1, 2)
    assert res.final_independent == (3,)
    assert check_coloring(g, res.coloring)
    assert res.coloring.palette_size <= 3 * exact_clique_number(g) // 2


def test_peel_raises_on_triangle_layer():
    g = from_edge_list(3, [(0, 1), (1, 2), (0, 2)])
    # a hand-made partition of singletons forces a triangle layer
    tp = twin_partition(Graph(3, []))
    tp = type(tp)(((0,), (1,), (2,)), (0, 1, 2), g)
    with pytest.raises(ClassViolation):
        peel_color_core(g, tp)
    res = peel_layers(g, tp, strict=False)
    assert res.violations and check_coloring(g, res.coloring)


def test_color_atom_examples():
    assert color_atom(complete(5)).palette_size == 5
    assert color_atom(cycle(5)).palette_size == 3
    c = color_atom(complete(3))
    assert sorted(c.colors.values()) == [0, 1, 2]


def test_merge_shared_edge():
    c1 = Coloring({0: 0, 1: 1, 2: 2}, 3)
    c2 = Coloring({0: 1, 1: 0, 3: 2}, 3)
    m = merge_on_separator(c1, c2, {0, 1})
    assert m.colors == {0: 0, 1: 1, 2: 2, 3: 2}
    assert m.palette_size == 3


def test_merge_empty_separator():
    m = merge_on_separator(Coloring({0: 0, 1: 1}, 2), Coloring({2: 0, 3: 1, 4: 2}, 3), set())
    assert m.palette_size == 3
    assert {m.colors[v] for v in (2, 3, 4)} == {0, 1, 2}


def test_merge_identity_on_separator():
    c1 = Coloring({0: 0, 1: 1}, 2)
    c2 = Coloring({1: 1, 2: 0}, 2)
    assert merge_on_separator(c1, c2, {1}).colors == {0: 0, 1: 1, 2: 0}


def test_merge_errors():
    with pytest.raises(SeparatorMismatch):
        merge_on_separator(Coloring({0: 0, 1: 1}, 2), Coloring({1: 0, 2: 1}, 2), {0, 1})
    with pytest.raises(SeparatorMismatch):
        merge_on_separator(Coloring({0: 0, 1: 0}, 1), Coloring({0: 0, 1: 1}, 2), {0, 1})


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 5), st.integers(0, 4), st.integers(0, 4), st.integers(0, 2**32))
def test_merge_properties(k, a, b, seed):
    rng = random.Random(seed)
    sep = list(range(k))
    size1, size2 = k + a, k + b
    c1 = {v: c for v, c in zip(sep, rng.sample(range(size1), k))}
    c2 = {v: c for v, c in zip(sep, rng.sample(range(size2), k))}
    for i in range(a):
        c1[100 + i] = rng.randrange(size1)
    for i in range(b):
        c2[200 + i] = rng.randrange(size2)
    m = merge_on_separator(Coloring(c1, size1), Coloring(c2, size2), sep)
    assert m.palette_size == max(size1, size2)
    assert all(m.colors[v] == c for v, c in c1.items())
    assert all(0 <= c < m.palette_size for c in m.colors.values())
    # renaming of the second side is a bijection on its colors
    pairs = {(c2[v], m.colors[v]) for v in c2}
    assert len({x for x, _ in pairs}) == len(pairs) == len({y for _, y in pairs})


@pytest.mark.parametrize("k", range(2, 8))
def test_color_odd_holes(k):
    r = color(cycle(2 * k + 1))
    assert (r.colors_used, r.omega_estimate, r.bound) == (3, 2, 3)
    assert r.ratio == Fraction(3, 2) and r.omega_exact


def test_color_hajos():
    for mode in ("permissive", "strict"):
        r = color(hajos(), mode=mode)
        assert (r.colors_used, r.omega_estimate, r.bound) == (4, 3, 4)
        assert r.class_violation is None


def test_color_small_cases():
    r = color(Graph(0))
    assert r.colors_used == 0 and r.ratio is None and r.atoms == 0
    assert color(Graph(1)).colors_used == 1
    assert color(Graph(4)).colors_used == 1


def test_color_chordal_is_optimal():
    for seed in range(15):
        g = random_chordal(60, seed, 8)
        r = color(g)
        assert r.colors_used == r.omega_estimate == exact_clique_number(g)


def test_color_report_json_keys():
    data = color(cycle(5)).to_json()
    assert set(data) == {"colors_used", "omega", "omega_exact", "bound", "ratio",
                         "class_violation", "atoms", "timings_ms", "coloring"}
    assert data["ratio"] == "3/2" and len(data["coloring"]) == 5


def test_color_strict_refusals():
    with pytest.raises(NotInClass) as info:
        color(cycle(6), mode="strict")
    assert info.value.witness.validate(cycle(6))
    with pytest.raises(TooLargeForStrict):
        color(cycle(31), mode="strict")


def test_color_permissive_always_proper():
    rng = random.Random(17)
    flagged = 0
    for _ in range(200):
        g = erdos_renyi(rng.randint(1, 14), rng.random(), rng)
        r = color(g)
        assert check_coloring(g, r.coloring)
        assert r.coloring.palette_size == r.colors_used
        assert sorted(set(r.coloring.colors.values())) == list(range(r.colors_used))
        flagged += r.class_violation is not None
    assert flagged > 0


def test_color_bound_and_sandwich_in_class():
    for g in in_class_sample(150, seed=23, max_n=11):
        r = color(g)
        assert check_coloring(g, r.coloring)
        omega = exact_clique_number(g)
        assert r.class_violation is None and r.omega_exact and r.omega_estimate == omega
        assert exact_chromatic_number(g) <= r.colors_used <= 3 * omega // 2


def test_color_universal_vertices_append():
    # a C5 with a universal apex: the wheel W5
    g = from_edge_list(6, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)] + [(5, i) for i in range(5)])
    r = color(g)
    assert r.colors_used == 4 == exact_chromatic_number(g)
    assert len({r.coloring[v] for v in range(5)}) == 3
