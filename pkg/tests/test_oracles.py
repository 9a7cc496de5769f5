import random
from fractions import Fraction

import pytest

from triagent import (h_index, oracle_centrality, oracle_lcc,
                      oracle_triangles, oracle_truss, oracle_truss_hindex)

from conftest import NAMED, c5, diamond, gnp, k3, k4, p3, petersen, s5


def test_triangles_k3():
    t = oracle_triangles(k3())
    assert t.total == 1
    assert all(v == 1 for v in t.per_node.values())
    assert all(s == 1 for s in t.per_edge.values())


def test_triangles_k4():
    t = oracle_triangles(k4())
    assert t.total == 4
    assert all(v == 3 for v in t.per_node.values())
    assert all(s == 2 for s in t.per_edge.values())


def test_triangles_petersen_is_triangle_free():
    assert oracle_triangles(petersen()).total == 0


def test_triangle_identities_on_random_graphs():
    for seed in range(30):
        g = gnp(random.Random(seed).randint(5, 20), 0.4, seed)
        t = oracle_triangles(g)
        assert sum(t.per_node.values()) == 3 * t.total
        assert sum(t.per_edge.values()) == 3 * t.total
        for (u, v), s in t.per_edge.items():
            assert s <= min(g.degree(u), g.degree(v)) - 1


def test_truss_k4():
    lab = oracle_truss(k4())
    assert lab.t_max == 4
    assert all(t == 4 for t in lab.per_edge.values())


def test_truss_c5():
    assert all(t == 2 for t in oracle_truss(c5()).per_edge.values())


def test_truss_diamond():
    lab = oracle_truss(diamond())
    assert len(lab.per_edge) == 5
    assert all(t == 3 for t in lab.per_edge.values())


def test_k_truss_extraction():
    lab = oracle_truss(k4())
    assert len(lab.k_truss(4)) == 6
    assert lab.k_truss(5) == frozenset()
    assert len(oracle_truss(diamond()).k_truss(3)) == 5
    with pytest.raises(ValueError):
        lab.k_truss(1)


def test_h_index_examples():
    assert h_index([]) == 0
    assert h_index([1, 1, 1]) == 1
    assert h_index([5, 4, 3, 2, 1]) == 3


def test_h_index_properties():
    rng = random.Random(42)
    for _ in range(200):
        xs = [rng.randint(0, 12) for _ in range(rng.randint(0, 15))]
        h = h_index(xs)
        assert h <= len(xs)
        assert h <= max(xs, default=0)
        assert sum(1 for x in xs if x >= h) >= h
        # adding an element never decreases the h-index
        assert h_index(xs + [rng.randint(0, 12)]) >= h


def test_truss_hindex_examples():
    lab = oracle_truss_hindex(k4())
    assert all(t == 4 for t in lab.per_edge.values())
    assert all(t == 2 for t in oracle_truss_hindex(c5()).per_edge.values())
    assert all(t == 3 for t in oracle_truss_hindex(diamond()).per_edge.values())


def test_truss_equals_hindex_on_corpus():
    """Peeling and h-index fixed point agree on 200+ random graphs."""
    count = 0
    rng = random.Random(7)
    while count < 200:
        n = rng.choice([6, 8, 12, 16, 24, 32])
        p = rng.choice([0.15, 0.3, 0.5, 0.7])
        g = gnp(n, p, rng.randint(0, 10 ** 6))
        assert oracle_truss(g).per_edge == oracle_truss_hindex(g).per_edge
        count += 1
    for make in NAMED.values():
        g = make()
        assert oracle_truss(g).per_edge == oracle_truss_hindex(g).per_edge


def test_centrality_k3_k4():
    for g in (k3(), k4()):
        tc = oracle_centrality(g)
        assert tc.defined
        assert all(x == 1 for x in tc.per_node.values())


def test_centrality_triangle_free_is_undefined():
    tc = oracle_centrality(petersen())
    assert not tc.defined
    assert all(x == 0 for x in tc.per_node.values())


def test_centrality_range_and_b_term():
    for seed in range(20):
        g = gnp(12, 0.4, seed)
        tc = oracle_centrality(g)
        if not tc.defined:
            continue
        t = oracle_triangles(g)
        for v, x in tc.per_node.items():
            assert 0 <= x <= 1
            nbr = g.neighbor_set(v)
            n_t = {u for u in nbr if g.neighbor_set(u) & nbr}
            if n_t == nbr:
                # no non-triangle neighbors: value is the pure A/3 term
                a = t.per_node[v] + sum(t.per_node[u] for u in n_t)
                assert x == Fraction(a, 3 * t.total)


def test_lcc_values():
    assert all(x == Fraction(1, 2) for x in oracle_lcc(k3()).per_node.values())
    assert all(x == Fraction(1, 2) for x in oracle_lcc(k4()).per_node.values())
    star = oracle_lcc(s5())
    assert star.per_node[0] == 0          # center of a star, no triangles
    assert all(x == 0 for x in star.per_node.values())
    ends = oracle_lcc(p3())
    assert ends.per_node[0] == 0          # degree-1 endpoints


def test_lcc_standard_variant_doubles():
    g = gnp(10, 0.5, 3)
    paper = oracle_lcc(g).per_node
    std = oracle_lcc(g, standard=True).per_node
    assert all(std[v] == 2 * paper[v] for v in paper)
