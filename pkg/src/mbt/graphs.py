"""Small-graph representation on bit masks, a named-graph catalog, exact
densities, triangle detection, and text codecs.

Vertices are 0..n-1 with n <= 64.  The edge set is a single Python int in
which bit k stands for the k-th vertex pair in lexicographic order
(0,1),(0,2),...,(0,n-1),(1,2),...  All derived quantities (degrees,
adjacency masks, triangles) are computed from that mask.  Density values
are exact `fractions.Fraction`s; no float ever enters a density
comparison.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

MAX_VERTICES = 64

Edge = tuple[int, int]


@lru_cache(maxsize=None)
def pair_table(n: int) -> tuple[Edge, ...]:
    """All vertex pairs (u, v), u < v, in lexicographic order."""
    return tuple((u, v) for u in range(n) for v in range(u + 1, n))


@lru_cache(maxsize=None)
def _pair_index_table(n: int) -> dict[Edge, int]:
    return {pair: k for k, pair in enumerate(pair_table(n))}


def edge_index(n: int, u: int, v: int) -> int:
    """Slot of edge {u, v} in the lexicographic pair order for n vertices."""
    if u == v:
        raise ValueError(f"self-loop ({u},{v})")
    if u > v:
        u, v = v, u
    if not 0 <= u < v < n:
        raise ValueError(f"edge ({u},{v}) out of range for n={n}")
    return _pair_index_table(n)[(u, v)]


def edge_endpoints(n: int, index: int) -> Edge:
    return pair_table(n)[index]


def _popcount(x: int) -> int:
    return bin(x).count("1")


class Graph:
    """Undirected simple graph with an optional vertex partition.

    Instances are value-like: equality and hashing use (n, edge_mask,
    partition), and mutators return new graphs.
    """

    __slots__ = ("n", "edge_mask", "partition", "_adj")

    def __init__(self, n: int, edge_mask: int = 0,
                 partition: Optional[Sequence[int]] = None):
        if not 0 <= n <= MAX_VERTICES:
            raise ValueError(f"vertex count {n} out of range (max {MAX_VERTICES})")
        if edge_mask < 0 or edge_mask >> (n * (n - 1) // 2):
            raise ValueError("edge mask has bits outside the pair range")
        self.n = n
        self.edge_mask = edge_mask
        self.partition = tuple(partition) if partition is not None else None
        if self.partition is not None:
            self._check_partition()
        self._adj: Optional[list[int]] = None

    def _check_partition(self) -> None:
        part = self.partition
        assert part is not None
        if len(part) != self.n:
            raise ValueError("partition length differs from vertex count")
        k = max(part) + 1 if part else 0
        sizes = [part.count(c) for c in range(k)]
        if any(s == 0 for s in sizes):
            raise ValueError("partition has an empty class")
        if max(sizes) - min(sizes) > 1:
            raise ValueError("partition class sizes differ by more than 1")
        for (u, v) in self.edges():
            if part[u] == part[v]:
                raise ValueError(f"edge ({u},{v}) lies inside partition class {part[u]}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge],
                   partition: Optional[Sequence[int]] = None) -> "Graph":
        mask = 0
        for (u, v) in edges:
            bit = 1 << edge_index(n, u, v)
            if mask & bit:
                raise ValueError(f"duplicate edge ({u},{v})")
            mask |= bit
        return cls(n, mask, partition)

    # -- basic queries ----------------------------------------------------

    def edges(self) -> Iterator[Edge]:
        pairs = pair_table(self.n)
        mask = self.edge_mask
        while mask:
            low = mask & -mask
            yield pairs[low.bit_length() - 1]
            mask ^= low

    def edge_ids(self) -> Iterator[int]:
        mask = self.edge_mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    @property
    def num_edges(self) -> int:
        return _popcount(self.edge_mask)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.edge_mask >> edge_index(self.n, u, v) & 1)

    def adjacency_masks(self) -> list[int]:
        """Per-vertex neighbour bit masks (bit v of adj[u] set iff uv is an edge)."""
        if self._adj is None:
            adj = [0] * self.n
            for (u, v) in self.edges():
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            self._adj = adj
        return self._adj

    def degree(self, v: int) -> int:
        return _popcount(self.adjacency_masks()[v])

    def degrees(self) -> list[int]:
        return [_popcount(m) for m in self.adjacency_masks()]

    def min_degree(self) -> int:
        return min(self.degrees()) if self.n else 0

    # -- mutators (value style) -------------------------------------------

    def with_edge(self, u: int, v: int) -> "Graph":
        return Graph(self.n, self.edge_mask | (1 << edge_index(self.n, u, v)),
                     self.partition)

    def without_edge(self, u: int, v: int) -> "Graph":
        return Graph(self.n, self.edge_mask & ~(1 << edge_index(self.n, u, v)),
                     self.partition)

    def without_edge_id(self, eid: int) -> "Graph":
        return Graph(self.n, self.edge_mask & ~(1 << eid), self.partition)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image under the vertex permutation v -> perm[v]."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("not a permutation of the vertex set")
        edges = [(perm[u], perm[v]) for (u, v) in self.edges()]
        part = None
        if self.partition is not None:
            part = [0] * self.n
            for v in range(self.n):
                part[perm[v]] = self.partition[v]
        return Graph.from_edges(self.n, edges, part)

    def induced_subgraph(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, vertices relabelled 0..k-1 in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        edges = [(index[u], index[v]) for (u, v) in self.edges()
                 if u in index and v in index]
        return Graph.from_edges(len(vertices), edges)

    def drop_partition(self) -> "Graph":
        return Graph(self.n, self.edge_mask)

    # -- dunder -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Graph)
                and self.n == other.n
                and self.edge_mask == other.edge_mask
                and self.partition == other.partition)

    def __hash__(self) -> int:
        return hash((self.n, self.edge_mask, self.partition))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


# -- connectivity and triangles ------------------------------------------


def is_connected(g: Graph, ignore_isolated: bool = False) -> bool:
    """Connectivity over all vertices, or over non-isolated ones only."""
    adj = g.adjacency_masks()
    live = [v for v in range(g.n) if not ignore_isolated or adj[v]]
    if not live:
        return True
    seen = 1 << live[0]
    frontier = seen
    while frontier:
        nxt = 0
        while frontier:
            low = frontier & -frontier
            nxt |= adj[low.bit_length() - 1]
            frontier ^= low
        frontier = nxt & ~seen
        seen |= frontier
    return all(seen >> v & 1 for v in live)


def triangles_of(g: Graph) -> list[tuple[int, int, int]]:
    """All 3-cliques as sorted triples, in lexicographic order."""
    adj = g.adjacency_masks()
    out = []
    for (u, v) in g.edges():
        common = adj[u] & adj[v] & ~((1 << (v + 1)) - 1)
        while common:
            low = common & -common
            out.append((u, v, low.bit_length() - 1))
            common ^= low
    out.sort()
    return out


def cliques_of(g: Graph, k: int) -> list[tuple[int, ...]]:
    """All k-cliques as sorted tuples (simple recursive extension)."""
    if k < 1:
        raise ValueError("k must be positive")
    adj = g.adjacency_masks()
    out: list[tuple[int, ...]] = []

    def extend(clique: list[int], cand: int) -> None:
        if len(clique) == k:
            out.append(tuple(clique))
            return
        c = cand
        while c:
            low = c & -c
            v = low.bit_length() - 1
            c ^= low
            clique.append(v)
            extend(clique, cand & adj[v] & ~((1 << (v + 1)) - 1))
            clique.pop()

    extend([], (1 << g.n) - 1)
    return out


def every_edge_in_triangle(g: Graph) -> bool:
    adj = g.adjacency_masks()
    return all(adj[u] & adj[v] for (u, v) in g.edges())


# -- densities -------------------------------------------------------------

MAX_DENSITY_VERTEX_CAP = 25


def density(g: Graph) -> Fraction:
    if g.n == 0:
        raise ValueError("density of the empty graph is undefined")
    return Fraction(g.num_edges, g.n)


def max_density(g: Graph) -> tuple[Fraction, Graph]:
    """Maximum of e(H)/v(H) over nonempty subgraphs H, with a witness.

    The maximum over all subgraphs is attained on an induced subgraph
    (removing edges at a fixed vertex set cannot raise density), so we
    brute-force vertex subsets.  Exact rationals throughout.
    """
    if g.n == 0:
        raise ValueError("max density of the empty graph is undefined")
    if g.n > MAX_DENSITY_VERTEX_CAP:
        raise ValueError(f"max_density supports at most {MAX_DENSITY_VERTEX_CAP} vertices")
    adj = g.adjacency_masks()
    best = Fraction(0)
    best_set = 1
    for subset in range(1, 1 << g.n):
        edges = 0
        s = subset
        while s:
            low = s & -s
            v = low.bit_length() - 1
            s ^= low
            edges += _popcount(adj[v] & s)
        d = Fraction(edges, _popcount(subset))
        if d > best:
            best, best_set = d, subset
    witness = g.induced_subgraph([v for v in range(g.n) if best_set >> v & 1])
    return best, witness


def density_and_max_density(g: Graph) -> tuple[Fraction, Fraction, Graph]:
    m, witness = max_density(g)
    return density(g), m, witness


# -- named catalog ----------------------------------------------------------


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, pair_table(n))


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def path_graph(k: int) -> Graph:
    if k < 1:
        raise ValueError("path needs at least 1 vertex")
    return Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)])


def wheel_graph(k: int) -> Graph:
    """k-wheel: rim cycle on vertices 1..k, center vertex 0 joined to all."""
    if k < 3:
        raise ValueError("wheel needs a rim of at least 3 vertices")
    edges = [(0, i) for i in range(1, k + 1)]
    edges += [(i, i % k + 1) for i in range(1, k + 1)]
    return Graph.from_edges(k + 1, edges)


def k5_minus() -> Graph:
    """K5 minus the edge {3,4}; {0,1,2} is the fully-joined triple."""
    edges = [e for e in pair_table(5) if e != (3, 4)]
    return Graph.from_edges(5, edges)


def k3_plus() -> Graph:
    """Triangle 0,1,2 with the pendant edge {0,3}."""
    return Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3)])


def turan_graph(n: int, k: int) -> Graph:
    """Complete multipartite graph on near-equal classes, partition attached.

    Classes are contiguous vertex blocks; the first n % k classes get the
    extra vertex.
    """
    if k < 1 or n < k:
        raise ValueError("Turan graph needs 1 <= k <= n")
    part = []
    for c in range(k):
        size = n // k + (1 if c < n % k else 0)
        part.extend([c] * size)
    edges = [(u, v) for (u, v) in pair_table(n) if part[u] != part[v]]
    return Graph.from_edges(n, edges, part)


def build_named_graph(name: str) -> Graph:
    """Catalog lookup: K:n, W:k, C:k, P:k, K5minus, K3plus, turan:n:k."""
    parts = name.split(":")
    kind = parts[0]
    try:
        if kind == "K" and len(parts) == 2:
            return complete_graph(int(parts[1]))
        if kind == "W" and len(parts) == 2:
            return wheel_graph(int(parts[1]))
        if kind == "C" and len(parts) == 2:
            return cycle_graph(int(parts[1]))
        if kind == "P" and len(parts) == 2:
            return path_graph(int(parts[1]))
        if kind == "K5minus" and len(parts) == 1:
            return k5_minus()
        if kind == "K3plus" and len(parts) == 1:
            return k3_plus()
        if kind == "turan" and len(parts) == 3:
            return turan_graph(int(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise ValueError(f"bad parameters in graph name {name!r}: {exc}") from exc
    raise ValueError(f"unknown graph name {name!r}")


# -- edge-list codec ---------------------------------------------------------


def to_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.num_edges}"]
    lines += [f"{u} {v}" for (u, v) in g.edges()]
    if g.partition is not None:
        k = max(g.partition) + 1
        lines.append(f"classes {k}")
        lines += [str(c) for c in g.partition]
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines()
             if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty edge-list input")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"malformed header {lines[0]!r}")
    n, m = int(header[0]), int(header[1])
    if len(lines) < 1 + m:
        raise ValueError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:1 + m]:
        fields = ln.split()
        if len(fields) != 2:
            raise ValueError(f"malformed edge line {ln!r}")
        u, v = int(fields[0]), int(fields[1])
        if u == v:
            raise ValueError(f"self-loop {u} {v}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"vertex index out of range in {ln!r}")
        edges.append((u, v))
    partition = None
    rest = lines[1 + m:]
    if rest:
        fields = rest[0].split()
        if len(fields) != 2 or fields[0] != "classes":
            raise ValueError(f"unexpected trailer line {rest[0]!r}")
        k = int(fields[1])
        if len(rest) != 1 + n:
            raise ValueError("partition trailer must list one class per vertex")
        partition = [int(x) for x in rest[1:]]
        if any(not 0 <= c < k for c in partition):
            raise ValueError("partition class index out of range")
    return Graph.from_edges(n, edges, partition)


# -- graph6 codec ------------------------------------------------------------


def to_graph6(g: Graph) -> str:
    """Standard ASCII graph6 encoding (n <= 62)."""
    if g.n > 62:
        raise ValueError("graph6 codec supports at most 62 vertices")
    bits = []
    adj = g.adjacency_masks()
    for v in range(1, g.n):
        for u in range(v):
            bits.append(adj[u] >> v & 1)
    while len(bits) % 6:
        bits.append(0)
    chars = [chr(g.n + 63)]
    for i in range(0, len(bits), 6):
        value = 0
        for b in bits[i:i + 6]:
            value = value << 1 | b
        chars.append(chr(value + 63))
    return "".join(chars)


def from_graph6(text: str) -> Graph:
    data = text.strip()
    if data.startswith(">>graph6<<"):
        data = data[len(">>graph6<<"):]
    if not data:
        raise ValueError("empty graph6 input")
    n = ord(data[0]) - 63
    if not 0 <= n <= 62:
        raise ValueError("unsupported graph6 vertex count")
    npairs = n * (n - 1) // 2
    need = (npairs + 5) // 6
    body = data[1:]
    if len(body) != need:
        raise ValueError(f"graph6 body length {len(body)} != expected {need}")
    bits = []
    for ch in body:
        value = ord(ch) - 63
        if not 0 <= value < 64:
            raise ValueError(f"invalid graph6 character {ch!r}")
        bits.extend((value >> shift) & 1 for shift in range(5, -1, -1))
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            if bits[k]:
                edges.append((u, v))
            k += 1
    return Graph.from_edges(n, edges)


def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists (isolated vertices included)."""
    adj = g.adjacency_masks()
    seen = 0
    out = []
    for v in range(g.n):
        if seen >> v & 1:
            continue
        comp = 1 << v
        frontier = comp
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= adj[low.bit_length() - 1]
                f ^= low
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append([u for u in range(g.n) if comp >> u & 1])
    return out


def complement(g: Graph) -> Graph:
    full = (1 << (g.n * (g.n - 1) // 2)) - 1
    return Graph(g.n, full & ~g.edge_mask)


def disjoint_union(a: Graph, b: Graph) -> Graph:
    edges = list(a.edges()) + [(u + a.n, v + a.n) for (u, v) in b.edges()]
    return Graph.from_edges(a.n + b.n, edges)


def all_graphs_labeled(n: int, max_edges: Optional[int] = None) -> Iterator[Graph]:
    """Every labeled graph on n vertices (oracle-sized inputs only)."""
    npairs = n * (n - 1) // 2
    for mask in range(1 << npairs):
        if max_edges is not None and _popcount(mask) > max_edges:
            continue
        yield Graph(n, mask)
