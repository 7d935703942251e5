"""Triangle-collection theory: the share-an-edge relation graph on
triangles, the very basic / basic / collection / bunch taxonomy, the
exhaustive classification of minimal collections, and the reduction
consistency check.

A graph is a *collection* when every edge lies in a triangle and the
triangle relation graph is connected.  *Very basic* means that relation
graph fits inside a path (equivalently, is a disjoint union of paths) or
inside the 4-node triangle-with-pendant graph; *basic* means two distinct
edge deletions each leave a very basic graph.  A *bunch* is a collection
built by a triangle sequence in which every triangle after the first
brings exactly one new vertex and at least two new edges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .graphs import (Graph, edge_index, every_edge_in_triangle, max_density,
                     to_graph6, triangles_of, wheel_graph)
from . import iso

CLASSIFY_VERTEX_CAP = 10

Triangle = tuple[int, int, int]


def _triangle_edge_mask(g: Graph, t: Triangle) -> int:
    a, b, c = t
    return (1 << edge_index(g.n, a, b)
            | 1 << edge_index(g.n, b, c)
            | 1 << edge_index(g.n, a, c))


@dataclass
class TriangleGraph:
    """Nodes are the triangles of the base graph; two triangles are
    adjacent iff they share an edge."""
    triangles: list[Triangle]
    adjacency: list[set[int]]
    edge_masks: list[int]

    @property
    def node_count(self) -> int:
        return len(self.triangles)

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    def is_connected(self) -> bool:
        if not self.triangles:
            return False
        seen = {0}
        frontier = [0]
        while frontier:
            i = frontier.pop()
            for j in self.adjacency[i]:
                if j not in seen:
                    seen.add(j)
                    frontier.append(j)
        return len(seen) == len(self.triangles)

    def component_nodes(self) -> list[list[int]]:
        seen: set[int] = set()
        comps = []
        for start in range(len(self.triangles)):
            if start in seen:
                continue
            comp = [start]
            seen.add(start)
            frontier = [start]
            while frontier:
                i = frontier.pop()
                for j in self.adjacency[i]:
                    if j not in seen:
                        seen.add(j)
                        comp.append(j)
                        frontier.append(j)
            comps.append(sorted(comp))
        return comps

    def is_disjoint_union_of_paths(self) -> bool:
        """Subgraph-of-a-path test: max degree 2 and no cycles."""
        n = self.node_count
        if n == 0:
            return True
        if any(len(a) > 2 for a in self.adjacency):
            return False
        comps = self.component_nodes()
        edges = self.edge_count()
        return edges == n - len(comps)

    def embeds_in_k3_plus(self) -> bool:
        """Injective edge-preserving map into triangle {0,1,2} + pendant 3-0."""
        if self.node_count > 4:
            return False
        host = {0: {1, 2, 3}, 1: {0, 2}, 2: {0, 1}, 3: {0}}
        nodes = range(self.node_count)
        for images in itertools.permutations(range(4), self.node_count):
            ok = True
            for i in nodes:
                for j in self.adjacency[i]:
                    if images[j] not in host[images[i]]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return True
        return False


def triangle_graph(g: Graph) -> TriangleGraph:
    tris = triangles_of(g)
    masks = [_triangle_edge_mask(g, t) for t in tris]
    adjacency: list[set[int]] = [set() for _ in tris]
    for i in range(len(tris)):
        for j in range(i + 1, len(tris)):
            if masks[i] & masks[j]:
                adjacency[i].add(j)
                adjacency[j].add(i)
    return TriangleGraph(tris, adjacency, masks)


def is_collection(g: Graph) -> bool:
    """Every edge in a triangle, triangle relation connected, no isolated
    vertices, at least one triangle."""
    if g.num_edges == 0:
        return False
    if any(d == 0 for d in g.degrees()):
        return False
    if not every_edge_in_triangle(g):
        return False
    return triangle_graph(g).is_connected()


def is_very_basic(g: Graph) -> bool:
    tg = triangle_graph(g)
    return tg.is_disjoint_union_of_paths() or tg.embeds_in_k3_plus()


def basic_witness(g: Graph) -> Optional[tuple[int, int]]:
    """Distinct edge slots (e1, e2) whose single deletions are each very
    basic, or None."""
    edge_ids = sorted(g.edge_ids())
    good = [eid for eid in edge_ids if is_very_basic(g.without_edge_id(eid))]
    if len(good) >= 2:
        return good[0], good[1]
    return None


def is_basic(g: Graph) -> bool:
    return basic_witness(g) is not None


def bunch_witness(g: Graph) -> Optional[list[Triangle]]:
    """A triangle sequence covering every edge of g, each triangle after
    the first adding exactly one new vertex and at least two new edges;
    None when g is not a bunch."""
    full = g.edge_mask
    if full == 0:
        return None
    if any(d == 0 for d in g.degrees()):
        return None
    tris = triangles_of(g)
    if not tris:
        return None
    masks = [_triangle_edge_mask(g, t) for t in tris]
    vmasks = [(1 << a) | (1 << b) | (1 << c) for (a, b, c) in tris]
    failed: set[tuple[int, int]] = set()

    def extend(vmask: int, emask: int, seq: list[int]) -> Optional[list[int]]:
        if emask == full:
            return seq
        key = (vmask, emask)
        if key in failed:
            return None
        for i in range(len(tris)):
            new_v = vmasks[i] & ~vmask
            if bin(new_v).count("1") != 1:
                continue
            new_e = masks[i] & ~emask
            if bin(new_e).count("1") < 2:
                continue
            res = extend(vmask | vmasks[i], emask | masks[i], seq + [i])
            if res is not None:
                return res
        failed.add(key)
        return None

    for first in range(len(tris)):
        res = extend(vmasks[first], masks[first], [first])
        if res is not None:
            return [tris[i] for i in res]
    return None


def find_bunch(g: Graph) -> Graph:
    """A spanning bunch subgraph of the collection g with >= 2*v(g)-3 edges.

    Every triangle sequence that adds one new vertex per step adds at
    least two new edges per step automatically, so any spanning sequence
    works; existence is guaranteed for collections and its absence is a
    build-breaking event.
    """
    if not is_collection(g):
        raise ValueError("find_bunch needs a triangle collection")
    tris = triangles_of(g)
    masks = [_triangle_edge_mask(g, t) for t in tris]
    vmasks = [(1 << a) | (1 << b) | (1 << c) for (a, b, c) in tris]
    all_v = 0
    for d, v in zip(g.degrees(), range(g.n)):
        if d:
            all_v |= 1 << v
    failed: set[int] = set()

    def extend(vmask: int, emask: int) -> Optional[int]:
        if vmask == all_v:
            return emask
        if vmask in failed:
            return None
        for i in range(len(tris)):
            new_v = vmasks[i] & ~vmask
            if bin(new_v).count("1") != 1:
                continue
            res = extend(vmask | vmasks[i], emask | masks[i])
            if res is not None:
                return res
        failed.add(vmask)
        return None

    for first in range(len(tris)):
        emask = extend(vmasks[first], masks[first])
        if emask is not None:
            bunch = Graph(g.n, emask)
            assert bunch.num_edges >= 2 * bin(all_v).count("1") - 3
            return bunch
    raise AssertionError("collection without a spanning bunch; classification broken")


@dataclass
class CollectionClass:
    """A graph with its full classification record."""
    graph: Graph
    graph6: str
    is_collection: bool
    very_basic: bool
    basic: bool
    basic_edges: Optional[tuple[int, int]]
    bunch: bool
    bunch_triangles: Optional[list[Triangle]]
    m: Fraction
    verdicts: dict[str, str] = field(default_factory=dict)

    @property
    def v(self) -> int:
        return self.graph.n

    @property
    def e(self) -> int:
        return self.graph.num_edges

    def sort_key(self):
        return (self.v, self.e, self.graph6)

    def record(self) -> dict:
        return {
            "graph6": self.graph6,
            "vertices": self.v,
            "edges": sorted(self.graph.edges()),
            "is_collection": self.is_collection,
            "very_basic": self.very_basic,
            "basic": self.basic,
            "basic_edges": list(self.basic_edges) if self.basic_edges else None,
            "bunch": self.bunch,
            "max_density": f"{self.m.numerator}/{self.m.denominator}",
            "verdicts": dict(self.verdicts),
        }


def classify(g: Graph) -> CollectionClass:
    if g.n > CLASSIFY_VERTEX_CAP:
        raise ValueError(f"classification capped at {CLASSIFY_VERTEX_CAP} vertices")
    witness = basic_witness(g)
    bw = bunch_witness(g)
    coll = is_collection(g)
    m = max_density(g)[0] if g.num_edges else Fraction(0)
    return CollectionClass(
        graph=g,
        graph6=to_graph6(iso.canonical_form(g).graph()),
        is_collection=coll,
        very_basic=is_very_basic(g),
        basic=witness is not None,
        basic_edges=witness,
        bunch=coll and bw is not None,
        bunch_triangles=bw,
        m=m,
    )


def enumerate_collections(v_range: Iterable[int],
                          edge_formula: Optional[str] = None,
                          edge_range: Optional[tuple[int, int]] = None,
                          min_degree: Optional[int] = None,
                          max_density_bound: Optional[Fraction] = None,
                          strict_density: bool = True,
                          basic_allowed: str = "include",
                          ) -> list[CollectionClass]:
    """All isomorphism classes of collections for each vertex count in
    v_range under the given constraints, fully classified.

    edge_formula "2v-1" pins the edge count per order; basic_allowed is
    one of include / exclude / only.
    """
    if basic_allowed not in ("include", "exclude", "only"):
        raise ValueError("basic_allowed must be include, exclude or only")
    out: list[CollectionClass] = []
    for v in v_range:
        if not 3 <= v <= 8:
            raise ValueError("collection enumeration supports 3..8 vertices")
        if edge_formula == "2v-1":
            e_lo = e_hi = 2 * v - 1
        elif edge_formula is not None:
            raise ValueError(f"unknown edge formula {edge_formula!r}")
        elif edge_range is not None:
            e_lo, e_hi = edge_range
        else:
            e_lo, e_hi = 3, v * (v - 1) // 2
        cap = max_density_bound

        def final(g: Graph) -> bool:
            if not is_collection(g):
                return False
            if cap is not None and strict_density and max_density(g)[0] >= cap:
                return False
            return True

        for g in iso.enumerate_nonisomorphic(
                v, edges=(e_lo, e_hi),
                min_degree=max(min_degree or 2, 2),
                every_edge_in_triangle=True,
                density_cap=cap,
                extra_final=final):
            cls = classify(g)
            if basic_allowed == "exclude" and cls.basic:
                continue
            if basic_allowed == "only" and not cls.basic:
                continue
            out.append(cls)
    out.sort(key=CollectionClass.sort_key)
    return out


@dataclass
class ClassificationReport:
    passed: bool
    minimal_classes: list[CollectionClass]
    basic_classes: list[CollectionClass]
    failures: list[str]
    atlas: list[dict]

    def minimal_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for c in self.minimal_classes:
            counts[c.v] = counts.get(c.v, 0) + 1
        return counts


def verify_classification(run_solver: bool = True) -> ClassificationReport:
    """Reproduce the minimal-collection classification and check it:
    exactly 5 non-basic classes (1 at v=5 namely K5 minus an edge, 1 at
    v=6, 3 at v=7), with 3 basic classes at v=6 and 7 at v=7 beside them;
    optionally solver-check that Breaker wins the cyclic-triangle game on
    each of the 5 and the triangle game on every basic class."""
    from .graphs import k5_minus
    from .engine import GoalSpec, new_game
    from . import solver as slv

    failures: list[str] = []
    bound = Fraction(15, 8)
    minimal = enumerate_collections(range(5, 8), edge_formula="2v-1",
                                    min_degree=3, max_density_bound=bound,
                                    basic_allowed="exclude")
    basics = enumerate_collections(range(5, 8), edge_formula="2v-1",
                                   min_degree=3, max_density_bound=bound,
                                   basic_allowed="only")
    counts = {}
    for c in minimal:
        counts[c.v] = counts.get(c.v, 0) + 1
    if counts != {5: 1, 6: 1, 7: 3}:
        failures.append(f"minimal class counts {counts} != {{5:1, 6:1, 7:3}}")
    five = [c for c in minimal if c.v == 5]
    if not five or not iso.are_isomorphic(five[0].graph, k5_minus()):
        failures.append("the 5-vertex minimal class is not K5 minus an edge")
    bcounts = {}
    for c in basics:
        bcounts[c.v] = bcounts.get(c.v, 0) + 1
    if bcounts != {6: 3, 7: 7}:
        failures.append(f"basic class counts {bcounts} != {{6:3, 7:7}}")

    if run_solver:
        tc = GoalSpec.cyclic_triangle()
        k3 = GoalSpec.clique(3)
        for c in minimal:
            res = slv.solve(new_game(c.graph, tc))
            c.verdicts["tc"] = res.winner_name
            if res.winner_name != "Breaker":
                failures.append(f"{c.graph6}: cyclic-triangle game not a Breaker win")
        for c in basics:
            res = slv.solve(new_game(c.graph, k3))
            c.verdicts["clique:3"] = res.winner_name
            if res.winner_name != "Breaker":
                failures.append(f"{c.graph6}: triangle game not a Breaker win")
        for k in (3, 4, 5, 6):
            res = slv.solve(new_game(wheel_graph(k), k3))
            if res.winner_name != "Breaker":
                failures.append(f"W{k}: triangle game not a Breaker win")

    atlas = [c.record() for c in sorted(minimal + basics, key=CollectionClass.sort_key)]
    return ClassificationReport(not failures, minimal, basics, failures, atlas)


def named_minimal_classes() -> dict[str, CollectionClass]:
    """The five minimal non-basic classes keyed K5minus, S1..S4, and the
    basic classes beside them keyed A1..A3 (order 6) and B1..B7 (order 7).

    The figure-based labels are reconstructed by enumeration; within each
    order, classes are named in canonical (graph6) order.
    """
    bound = Fraction(15, 8)
    minimal = enumerate_collections(range(5, 8), edge_formula="2v-1",
                                    min_degree=3, max_density_bound=bound,
                                    basic_allowed="exclude")
    basics = enumerate_collections(range(6, 8), edge_formula="2v-1",
                                   min_degree=3, max_density_bound=bound,
                                   basic_allowed="only")
    names: dict[str, CollectionClass] = {}
    s = a = b = 0
    for c in minimal:
        if c.v == 5:
            names["K5minus"] = c
        else:
            s += 1
            names[f"S{s}"] = c
    for c in basics:
        if c.v == 6:
            a += 1
            names[f"A{a}"] = c
        else:
            b += 1
            names[f"B{b}"] = c
    return names


# -- reduction consistency ------------------------------------------------------


def collection_subgraphs(g: Graph) -> list[Graph]:
    """One representative per isomorphism class of collection subgraphs
    (arbitrary edge subsets, restricted to their support vertices)."""
    edge_ids = sorted(g.edge_ids())
    reps: dict[tuple, Graph] = {}
    for r in range(3, len(edge_ids) + 1):
        for combo in itertools.combinations(edge_ids, r):
            sub = Graph(g.n, 0)
            mask = 0
            for eid in combo:
                mask |= 1 << eid
            sub = Graph(g.n, mask)
            support = [v for v in range(g.n) if sub.degree(v)]
            small = sub.induced_subgraph(support)
            if small.num_edges != r:
                continue
            if not is_collection(small):
                continue
            key = iso.canonical_form(small).key
            reps.setdefault(key, small)
    return list(reps.values())


@dataclass
class ReductionReport:
    consistent: bool
    board_winner: str
    collection_winners: dict[str, str]
    counterexample: Optional[str]


def reduction_check(g: Graph, goal=None,
                    solve_cache: Optional[dict] = None) -> ReductionReport:
    """Maker wins on g iff she wins on some collection subgraph of g;
    compares the solver on both sides of that equivalence."""
    from .engine import GoalSpec, new_game
    from . import solver as slv

    goal = goal or GoalSpec.clique(3)
    board_res = slv.solve(new_game(g, goal))
    winners: dict[str, str] = {}
    any_maker = False
    for sub in collection_subgraphs(g):
        key = to_graph6(iso.canonical_form(sub).graph())
        if solve_cache is not None and (key, goal.describe()) in solve_cache:
            name = solve_cache[(key, goal.describe())]
        else:
            name = slv.solve(new_game(sub, goal)).winner_name
            if solve_cache is not None:
                solve_cache[(key, goal.describe())] = name
        winners[key] = name
        if name == "Maker":
            any_maker = True
    expected = "Maker" if any_maker else "Breaker"
    consistent = board_res.winner_name == expected
    return ReductionReport(consistent, board_res.winner_name, winners,
                           None if consistent else to_graph6(g))
