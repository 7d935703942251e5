"""Graph core: catalog, densities, triangles, codecs."""

import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from mbt.graphs import (Graph, build_named_graph, complete_graph, cycle_graph,
                        density_and_max_density, disjoint_union, edge_index,
                        from_edge_list, from_graph6, k3_plus, k5_minus,
                        max_density, path_graph, to_edge_list, to_graph6,
                        triangles_of, turan_graph, wheel_graph)


def test_catalog_complete():
    g = build_named_graph("K:4")
    assert g.n == 4 and g.num_edges == 6


def test_catalog_turan():
    g = build_named_graph("turan:6:3")
    assert g.num_edges == 12
    assert g.partition == (0, 0, 1, 1, 2, 2)
    sizes = [g.partition.count(c) for c in range(3)]
    assert max(sizes) - min(sizes) <= 1


def test_catalog_wheel():
    g = build_named_graph("W:4")
    assert g.n == 5 and g.num_edges == 8
    tris = triangles_of(g)
    assert len(tris) == 4
    assert all(0 in t for t in tris)      # center is vertex 0


def test_catalog_misc():
    assert build_named_graph("K5minus").num_edges == 9
    assert build_named_graph("K3plus").num_edges == 4
    assert build_named_graph("C:5").num_edges == 5
    assert build_named_graph("P:4").num_edges == 3
    with pytest.raises(ValueError):
        build_named_graph("Q:3")
    with pytest.raises(ValueError):
        build_named_graph("K:65")


def test_density_complete():
    d, m, witness = density_and_max_density(complete_graph(4))
    assert d == Fraction(3, 2) and m == Fraction(3, 2)
    assert witness.num_edges == 6


def test_density_k5_minus():
    _, m, _ = density_and_max_density(k5_minus())
    assert m == Fraction(9, 5)


def test_density_empty_graph_rejected():
    with pytest.raises(ValueError):
        density_and_max_density(Graph(0))


def _max_density_all_subgraphs(g: Graph) -> Fraction:
    """Oracle over every edge-subset (support vertices only)."""
    edge_ids = sorted(g.edge_ids())
    best = Fraction(0)
    for r in range(1, len(edge_ids) + 1):
        for combo in itertools.combinations(edge_ids, r):
            mask = 0
            for eid in combo:
                mask |= 1 << eid
            sub = Graph(g.n, mask)
            support = sum(1 for v in range(g.n) if sub.degree(v))
            best = max(best, Fraction(r, support))
    return best


def test_max_density_matches_all_subgraph_oracle():
    rng = random.Random(5)
    from mbt.graphs import pair_table
    for _ in range(15):
        n = rng.randint(2, 5)
        pairs = list(pair_table(n))
        rng.shuffle(pairs)
        g = Graph.from_edges(n, pairs[:rng.randint(1, min(7, len(pairs)))])
        assert max_density(g)[0] == _max_density_all_subgraphs(g)


def _triangle_count_trace(g: Graph) -> int:
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for (u, v) in g.edges():
        a[u, v] = a[v, u] = 1
    return int(np.trace(np.linalg.matrix_power(a, 3)) // 6)


def test_triangles_examples():
    assert len(triangles_of(complete_graph(4))) == 4
    assert triangles_of(cycle_graph(5)) == []
    tris = triangles_of(wheel_graph(4))
    assert len(tris) == 4


def test_triangles_sorted_and_trace_oracle():
    rng = random.Random(11)
    from mbt.graphs import pair_table
    for _ in range(20):
        n = rng.randint(3, 9)
        pairs = list(pair_table(n))
        rng.shuffle(pairs)
        g = Graph.from_edges(n, pairs[:rng.randint(0, len(pairs))])
        tris = triangles_of(g)
        assert tris == sorted(tris)
        assert len(tris) == len(set(tris))
        assert len(tris) == _triangle_count_trace(g)


def test_edge_list_codec_round_trip():
    for g in (complete_graph(3), k5_minus(), turan_graph(6, 3), k3_plus()):
        assert from_edge_list(to_edge_list(g)) == g


def test_edge_list_format():
    assert to_edge_list(complete_graph(3)) == "3 3\n0 1\n0 2\n1 2\n"


def test_edge_list_errors():
    with pytest.raises(ValueError):
        from_edge_list("2 1\n0 0\n")          # self-loop
    with pytest.raises(ValueError):
        from_edge_list("2 2\n0 1\n0 1\n")     # duplicate edge
    with pytest.raises(ValueError):
        from_edge_list("2 1\n0 5\n")          # out of range
    with pytest.raises(ValueError):
        from_edge_list("nonsense\n")


def test_edge_list_comments_and_partition():
    text = "# turan board\n4 4\n0 2\n0 3\n1 2\n1 3\nclasses 2\n0\n0\n1\n1\n"
    g = from_edge_list(text)
    assert g.partition == (0, 0, 1, 1)
    assert from_edge_list(to_edge_list(g)) == g


def test_graph6_against_networkx():
    import networkx as nx
    rng = random.Random(23)
    from mbt.graphs import pair_table
    for _ in range(25):
        n = rng.randint(1, 12)
        pairs = list(pair_table(n))
        rng.shuffle(pairs)
        g = Graph.from_edges(n, pairs[:rng.randint(0, len(pairs))])
        ours = to_graph6(g)
        nxg = nx.Graph()
        nxg.add_nodes_from(range(n))
        nxg.add_edges_from(g.edges())
        theirs = nx.to_graph6_bytes(nxg, header=False).decode().strip()
        assert ours == theirs
        assert from_graph6(ours) == g.drop_partition()


def test_partition_validation():
    with pytest.raises(ValueError):
        Graph.from_edges(4, [(0, 1)], partition=[0, 0, 1, 1])  # intra-class edge
    with pytest.raises(ValueError):
        Graph.from_edges(4, [(0, 2)], partition=[0, 0, 0, 1])  # unbalanced
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 1)], partition=[0, 1])        # wrong length


def test_relabel_and_union():
    g = path_graph(3)
    h = g.relabel([2, 1, 0])
    assert h.has_edge(2, 1) and h.has_edge(1, 0)
    u = disjoint_union(complete_graph(3), complete_graph(3))
    assert u.n == 6 and u.num_edges == 6
    assert len(triangles_of(u)) == 2


def test_edge_index_errors():
    with pytest.raises(ValueError):
        edge_index(4, 2, 2)
    with pytest.raises(ValueError):
        edge_index(4, 0, 4)
