"""Exact isomorphism machinery for small graphs.

Canonical labeling maximizes a binary code of the adjacency matrix over
all vertex relabelings, with branch-and-bound over partial placements.
The code reads vertex pairs in column-major order (0,1),(0,2),(1,2),
(0,3),... so that placing vertices one position at a time extends the
code by one fully-determined block, which makes prefix pruning exact.

The same ordering drives isomorph-free generation: a labeled graph is
kept iff its own code is maximal, edges are added in increasing
column-major position, and removing the highest edge of a max-code graph
provably leaves a max-code graph, so every isomorphism class is produced
exactly once without post-hoc deduplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Optional, Sequence

from .graphs import Graph, max_density

ISO_VERTEX_CAP = 16
ENUM_VERTEX_CAP = 10


@lru_cache(maxsize=None)
def colmajor_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """Vertex pairs sorted by (high endpoint, low endpoint)."""
    return tuple((u, v) for v in range(n) for u in range(v))


def _identity_cols(n: int, adj: Sequence[int]) -> list[int]:
    """Code blocks of the identity labeling; block k-1 packs adjacency of
    vertex k to vertices 0..k-1, vertex 0 in the most significant bit."""
    cols = []
    for k in range(1, n):
        col = 0
        for i in range(k):
            col = col << 1 | (adj[k] >> i & 1)
        cols.append(col)
    return cols


def _search_canonical(n: int, adj: Sequence[int],
                      collect_perms: bool) -> tuple[list[int], list[tuple[int, ...]]]:
    """Find the maximum code; optionally collect every placement achieving it.

    A placement lists original vertices by canonical position.
    """
    if n == 0:
        return [], [()]
    if n == 1:
        return [], [(0,)]
    order = sorted(range(n), key=lambda v: -bin(adj[v]).count("1"))
    best_cols: Optional[list[int]] = None
    best_perms: list[tuple[int, ...]] = []
    placed: list[int] = []
    cols: list[int] = []

    def dfs(used_mask: int) -> None:
        nonlocal best_cols, best_perms
        k = len(placed)
        if k == n:
            if best_cols is None or cols > best_cols:
                best_cols = cols[:]
                best_perms = [tuple(placed)]
            elif collect_perms and cols == best_cols:
                best_perms.append(tuple(placed))
            return
        scored = []
        for v in order:
            if used_mask >> v & 1:
                continue
            col = 0
            av = adj[v]
            for i in range(k):
                col = col << 1 | (av >> placed[i] & 1)
            scored.append((col, v))
        scored.sort(key=lambda t: -t[0])
        for col, v in scored:
            if k and best_cols is not None:
                ref = best_cols[k - 1]
                if col < ref and cols[:k - 1] == best_cols[:k - 1]:
                    # every candidate after this one is smaller too
                    break
            placed.append(v)
            if k:
                cols.append(col)
            dfs(used_mask | 1 << v)
            placed.pop()
            if k:
                cols.pop()

    dfs(0)
    assert best_cols is not None
    return best_cols, best_perms


def _beats_identity(n: int, adj: Sequence[int], id_cols: Sequence[int]) -> bool:
    """True iff some relabeling has a strictly greater code than identity.

    Explores only placements whose code prefix equals the identity prefix;
    any candidate block above the identity block is an immediate win.
    """
    if n <= 1:
        return False
    placed: list[int] = []

    def dfs(used_mask: int) -> bool:
        k = len(placed)
        if k == n:
            return False
        if k == 0:
            for v in range(n):
                placed.append(v)
                if dfs(1 << v):
                    placed.pop()
                    return True
                placed.pop()
            return False
        ref = id_cols[k - 1]
        equal: list[int] = []
        for v in range(n):
            if used_mask >> v & 1:
                continue
            col = 0
            av = adj[v]
            for i in range(k):
                col = col << 1 | (av >> placed[i] & 1)
            if col > ref:
                return True
            if col == ref:
                equal.append(v)
        for v in equal:
            placed.append(v)
            if dfs(used_mask | 1 << v):
                placed.pop()
                return True
            placed.pop()
        return False

    return dfs(0)


def _cols_to_mask(n: int, cols: Sequence[int]) -> int:
    """Convert code blocks back to a row-major (standard) edge mask."""
    edges = []
    for k in range(1, n):
        col = cols[k - 1]
        for i in range(k):
            if col >> (k - 1 - i) & 1:
                edges.append((i, k))
    return Graph.from_edges(n, edges).edge_mask


@dataclass(frozen=True)
class CanonicalForm:
    """Label-invariant certificate: equal forms iff isomorphic graphs."""
    n: int
    edge_mask: int          # edge mask of the canonically relabeled graph
    perm: tuple[int, ...]   # maps original vertex -> canonical position

    @property
    def key(self) -> tuple[int, int]:
        return (self.n, self.edge_mask)

    def graph(self) -> Graph:
        return Graph(self.n, self.edge_mask)


def canonical_form(g: Graph) -> CanonicalForm:
    if g.n > ISO_VERTEX_CAP:
        raise ValueError(f"canonical form supports at most {ISO_VERTEX_CAP} vertices")
    cols, perms = _search_canonical(g.n, g.adjacency_masks(), collect_perms=False)
    placement = perms[0]
    perm = [0] * g.n
    for pos, v in enumerate(placement):
        perm[v] = pos
    return CanonicalForm(g.n, _cols_to_mask(g.n, cols), tuple(perm))


def are_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.num_edges != b.num_edges:
        return False
    return canonical_form(a).key == canonical_form(b).key


def automorphism_group(g: Graph) -> list[tuple[int, ...]]:
    """Every automorphism, as tuples perm with perm[v] = image of v."""
    if g.n > ISO_VERTEX_CAP:
        raise ValueError(f"automorphisms support at most {ISO_VERTEX_CAP} vertices")
    if g.n == 0:
        return [()]
    _, perms = _search_canonical(g.n, g.adjacency_masks(), collect_perms=True)
    base = perms[0]
    autos = []
    for p in perms:
        # base and p are placements with equal codes, so base[i] -> p[i]
        # preserves adjacency.
        mapping = [0] * g.n
        for i in range(g.n):
            mapping[base[i]] = p[i]
        autos.append(tuple(mapping))
    return autos


def automorphism_generators(g: Graph) -> list[tuple[int, ...]]:
    """A generating set of Aut(G); the identity alone for rigid graphs."""
    autos = automorphism_group(g)
    identity = tuple(range(g.n))
    gens = [p for p in autos if p != identity]
    return gens if gens else [identity]


def find_isomorphism(a: Graph, b: Graph) -> Optional[tuple[int, ...]]:
    """A vertex map perm with a.relabel(perm) == b (partitions ignored)."""
    if a.n != b.n or a.num_edges != b.num_edges:
        return None
    fa, fb = canonical_form(a), canonical_form(b)
    if fa.key != fb.key:
        return None
    inv_b = [0] * b.n
    for v in range(b.n):
        inv_b[fb.perm[v]] = v
    return tuple(inv_b[fa.perm[v]] for v in range(a.n))


# -- isomorph-free generation -------------------------------------------------


class EnumerationFilters:
    """In-growth pruning and final acceptance for the orderly generator.

    Growth adds pairs in increasing column-major position, so at any node
    the still-addable pairs are exactly those after the last added one;
    the pruning rules exploit that to reject dead branches early.
    """

    def __init__(self,
                 edge_min: int,
                 edge_max: int,
                 min_degree: Optional[int] = None,
                 every_edge_in_triangle: bool = False,
                 density_cap: Optional[Fraction] = None,
                 extra_final: Optional[Callable[[Graph], bool]] = None):
        self.edge_min = edge_min
        self.edge_max = edge_max
        self.min_degree = min_degree
        self.triangles = every_edge_in_triangle
        self.density_cap = density_cap
        self.extra_final = extra_final

    def in_edge_window(self, num_edges: int) -> bool:
        return self.edge_min <= num_edges <= self.edge_max

    def prune(self, n: int, adj: list[int], num_edges: int,
              addable: Sequence[tuple[int, int]]) -> bool:
        budget = self.edge_max - num_edges
        if num_edges + min(len(addable), budget) < self.edge_min:
            return True
        if self.min_degree is not None:
            slots = [0] * n
            for (a, b) in addable:
                slots[a] += 1
                slots[b] += 1
            need = 0
            for v in range(n):
                deficit = self.min_degree - bin(adj[v]).count("1")
                if deficit > 0:
                    if slots[v] < deficit:
                        return True
                    need += deficit
            if need > 2 * budget:
                return True
        if self.triangles:
            addable_adj = [0] * n
            for (a, b) in addable:
                addable_adj[a] |= 1 << b
                addable_adj[b] |= 1 << a
            for v in range(n):
                av = adj[v]
                w = av >> (v + 1)
                u = v
                while w:
                    u += 1
                    if not w & 1:
                        w >>= 1
                        continue
                    w >>= 1
                    if av & adj[u]:
                        continue
                    # edge (v,u) not in a triangle yet
                    if budget <= 0:
                        return True
                    pot_v = av | addable_adj[v]
                    pot_u = adj[u] | addable_adj[u]
                    if not (pot_v & pot_u & ~(1 << v) & ~(1 << u)):
                        return True
        if self.density_cap is not None and density_violation(n, adj, self.density_cap):
            return True
        return False

    def accept(self, g: Graph) -> bool:
        if not self.in_edge_window(g.num_edges):
            return False
        if self.min_degree is not None and (g.n == 0 or g.min_degree() < self.min_degree):
            return False
        if self.triangles:
            adj = g.adjacency_masks()
            if any(not adj[u] & adj[v] for (u, v) in g.edges()):
                return False
        if self.density_cap is not None and g.num_edges:
            if max_density(g)[0] > self.density_cap:
                return False
        if self.extra_final is not None and not self.extra_final(g):
            return False
        return True


def density_violation(n: int, adj: Sequence[int], cap: Fraction) -> bool:
    """True iff some vertex subset S has e(S) > cap * |S| (exact arithmetic)."""
    num, den = cap.numerator, cap.denominator
    for subset in range(1, 1 << n):
        size = bin(subset).count("1")
        if size < 3:
            continue
        edges = 0
        s = subset
        while s:
            low = s & -s
            v = low.bit_length() - 1
            s ^= low
            edges += bin(adj[v] & s).count("1")
        if edges * den > num * size:
            return True
    return False


def enumerate_nonisomorphic(n: int,
                            edges: Optional[int | tuple[int, int]] = None,
                            min_degree: Optional[int] = None,
                            every_edge_in_triangle: bool = False,
                            density_cap: Optional[Fraction] = None,
                            extra_final: Optional[Callable[[Graph], bool]] = None,
                            ) -> Iterator[Graph]:
    """Exactly one representative per isomorphism class of graphs on n
    labeled vertices (isolated vertices allowed) meeting the filters."""
    if n > ENUM_VERTEX_CAP:
        raise ValueError(f"enumeration supports at most {ENUM_VERTEX_CAP} vertices")
    if edges is None:
        e_min, e_max = 0, n * (n - 1) // 2
    elif isinstance(edges, int):
        e_min = e_max = edges
    else:
        e_min, e_max = edges
    e_max = min(e_max, n * (n - 1) // 2)
    filters = EnumerationFilters(e_min, e_max, min_degree,
                                 every_edge_in_triangle, density_cap,
                                 extra_final)
    pairs = colmajor_pairs(n)
    npairs = len(pairs)
    adj = [0] * n

    def grow(num_edges: int, last_pos: int) -> Iterator[Graph]:
        if filters.in_edge_window(num_edges):
            g = _graph_from_adj(n, adj)
            if filters.accept(g):
                yield g
        if num_edges == filters.edge_max:
            return
        addable = pairs[last_pos + 1:]
        if filters.prune(n, adj, num_edges, addable):
            return
        for pos in range(last_pos + 1, npairs):
            (u, v) = pairs[pos]
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            if not _beats_identity(n, adj, _identity_cols(n, adj)):
                yield from grow(num_edges + 1, pos)
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)

    yield from grow(0, -1)


def _graph_from_adj(n: int, adj: Sequence[int]) -> Graph:
    edges = []
    for v in range(n):
        w = adj[v] >> (v + 1)
        u = v + 1
        while w:
            if w & 1:
                edges.append((v, u))
            w >>= 1
            u += 1
    return Graph.from_edges(n, edges)
