"""Canonical forms, automorphisms, isomorph-free enumeration."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

from mbt.graphs import (Graph, all_graphs_labeled, complete_graph, k5_minus,
                        pair_table, path_graph, wheel_graph)
from mbt import iso


def _random_graph(rng, n, max_edges=None):
    pairs = list(pair_table(n))
    rng.shuffle(pairs)
    upper = len(pairs) if max_edges is None else min(max_edges, len(pairs))
    return Graph.from_edges(n, pairs[:rng.randint(0, upper)])


def test_canonical_form_k3_all_relabelings():
    k3 = complete_graph(3)
    keys = {iso.canonical_form(k3.relabel(p)).key
            for p in itertools.permutations(range(3))}
    assert len(keys) == 1


def test_canonical_form_distinguishes():
    assert iso.canonical_form(k5_minus()).key != iso.canonical_form(complete_graph(5)).key


def test_canonical_form_relabeling_invariance_100():
    rng = random.Random(3)
    for _ in range(8):
        g = _random_graph(rng, rng.randint(2, 8))
        base = iso.canonical_form(g).key
        for _ in range(100):
            perm = list(range(g.n))
            rng.shuffle(perm)
            assert iso.canonical_form(g.relabel(perm)).key == base


@settings(max_examples=40, deadline=None)
@given(hs.integers(min_value=2, max_value=7), hs.randoms(use_true_random=False))
def test_canonical_form_invariance_property(n, rnd):
    pairs = list(pair_table(n))
    edges = [e for e in pairs if rnd.random() < 0.4]
    g = Graph.from_edges(n, edges)
    perm = list(range(n))
    rnd.shuffle(perm)
    assert iso.canonical_form(g.relabel(perm)).key == iso.canonical_form(g).key


def test_canonical_perm_is_valid_relabeling():
    rng = random.Random(17)
    for _ in range(10):
        g = _random_graph(rng, rng.randint(2, 7))
        form = iso.canonical_form(g)
        assert g.relabel(form.perm).edge_mask == form.edge_mask


def test_eleven_classes_on_four_vertices_oracle():
    import networkx as nx
    reps = []
    for g in all_graphs_labeled(4):
        nxg = nx.Graph()
        nxg.add_nodes_from(range(4))
        nxg.add_edges_from(g.edges())
        if not any(nx.is_isomorphic(nxg, r) for r in reps):
            reps.append(nxg)
    assert len(reps) == 11
    assert sum(1 for _ in iso.enumerate_nonisomorphic(4)) == 11
    keys = {iso.canonical_form(g).key for g in all_graphs_labeled(4)}
    assert len(keys) == 11


@pytest.mark.parametrize("n,count", [(2, 2), (3, 4), (5, 34), (6, 156)])
def test_class_counts(n, count):
    assert sum(1 for _ in iso.enumerate_nonisomorphic(n)) == count


def test_enumeration_no_two_isomorphic_v5():
    import networkx as nx
    graphs = list(iso.enumerate_nonisomorphic(5))
    nxgs = []
    for g in graphs:
        nxg = nx.Graph()
        nxg.add_nodes_from(range(5))
        nxg.add_edges_from(g.edges())
        nxgs.append(nxg)
    for i in range(len(nxgs)):
        for j in range(i + 1, len(nxgs)):
            assert not nx.is_isomorphic(nxgs[i], nxgs[j])


def test_v5_e9_is_k5_minus():
    got = list(iso.enumerate_nonisomorphic(5, edges=9))
    assert len(got) == 1
    assert iso.are_isomorphic(got[0], k5_minus())


def test_enumeration_edge_window_against_labeled_dedup():
    found = sum(1 for _ in iso.enumerate_nonisomorphic(5, edges=(4, 6)))
    keys = {iso.canonical_form(g).key
            for g in all_graphs_labeled(5) if 4 <= g.num_edges <= 6}
    assert found == len(keys)


def test_enumeration_filters_respected():
    for g in iso.enumerate_nonisomorphic(6, edges=(6, 9), min_degree=2,
                                         every_edge_in_triangle=True):
        assert g.min_degree() >= 2
        adj = g.adjacency_masks()
        assert all(adj[u] & adj[v] for (u, v) in g.edges())


def test_enumeration_cap():
    with pytest.raises(ValueError):
        next(iso.enumerate_nonisomorphic(11))


def test_automorphism_orders():
    assert len(iso.automorphism_group(complete_graph(4))) == 24
    w4 = wheel_graph(4)
    autos = iso.automorphism_group(w4)
    assert len(autos) == 8
    assert all(p[0] == 0 for p in autos)      # center fixed
    assert len(iso.automorphism_group(path_graph(3))) == 2


def _brute_force_automorphisms(g: Graph) -> int:
    count = 0
    for p in itertools.permutations(range(g.n)):
        if all(g.has_edge(p[u], p[v]) for (u, v) in g.edges()):
            count += 1
    return count


def test_automorphism_group_against_brute_force():
    rng = random.Random(31)
    for _ in range(10):
        g = _random_graph(rng, rng.randint(2, 6))
        assert len(iso.automorphism_group(g)) == _brute_force_automorphisms(g)


def test_automorphisms_preserve_adjacency():
    g = k5_minus()
    for p in iso.automorphism_group(g):
        assert g.relabel(p) == g


def test_find_isomorphism_round_trip():
    rng = random.Random(41)
    for _ in range(10):
        g = _random_graph(rng, rng.randint(2, 7))
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = g.relabel(perm)
        found = iso.find_isomorphism(g, h)
        assert found is not None
        assert g.relabel(found) == h
    assert iso.find_isomorphism(complete_graph(4), path_graph(4)) is None


def test_iso_vertex_cap():
    with pytest.raises(ValueError):
        iso.canonical_form(Graph(17))


def _max_code_brute(g: Graph) -> tuple:
    """Best column-major code over all permutations, found by brute force."""
    best = None
    for p in itertools.permutations(range(g.n)):
        cols = []
        for k in range(1, g.n):
            col = 0
            for i in range(k):
                col = col << 1 | (1 if g.has_edge(p[i], p[k]) else 0)
            cols.append(col)
        if best is None or cols > best:
            best = cols
    return tuple(best or ())


def test_canonical_code_is_global_maximum():
    rng = random.Random(53)
    for _ in range(25):
        n = rng.randint(2, 6)
        pairs = list(pair_table(n))
        rng.shuffle(pairs)
        g = Graph.from_edges(n, pairs[:rng.randint(0, len(pairs))])
        form = iso.canonical_form(g)
        canon = form.graph()
        cols = []
        for k in range(1, n):
            col = 0
            for i in range(k):
                col = col << 1 | (1 if canon.has_edge(i, k) else 0)
            cols.append(col)
        assert tuple(cols) == _max_code_brute(g)
