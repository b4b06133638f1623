"""Finite simple connected graphs and their local combinatorics.

Vertices are dense integers ``0..n-1``; optional string labels are metadata
only.  A :class:`Graph` is immutable after construction and every query is a
pure function, so instances can be shared freely between threads.  All
tie-breaking is deterministic (lowest vertex id first) so that downstream
reports and certificates are reproducible byte for byte.
"""

from __future__ import annotations

import math
import warnings
from collections import deque
from dataclasses import dataclass


class GraphError(ValueError):
    """Raised when input data violates the graph invariants."""


class Graph:
    """Immutable simple undirected connected graph.

    Use :func:`build_graph` (or the parsers in :mod:`curvlab.graphio`) to
    construct instances; the constructor itself trusts nothing and re-checks
    the invariants: no loops, no duplicate edges, symmetric adjacency,
    connectedness.
    """

    __slots__ = ("n", "adj", "labels", "_dist_cache", "_girth_cache")

    def __init__(self, n: int, adjacency, labels=None):
        if n <= 0:
            raise GraphError("graph must have at least one vertex")
        adj = tuple(tuple(sorted(neighbors)) for neighbors in adjacency)
        if len(adj) != n:
            raise GraphError(f"adjacency has {len(adj)} rows, expected {n}")
        for u, row in enumerate(adj):
            if len(set(row)) != len(row):
                raise GraphError(f"duplicate neighbor in adjacency of {u}")
            for v in row:
                if not 0 <= v < n:
                    raise GraphError(f"neighbor {v} of {u} out of range")
                if v == u:
                    raise GraphError(f"loop at vertex {u}")
                if u not in adj[v]:
                    raise GraphError(f"adjacency not symmetric on ({u},{v})")
        self.n = n
        self.adj = adj
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise GraphError("label count does not match vertex count")
        self._dist_cache: dict[int, tuple[int, ...]] = {}
        self._girth_cache: int | float | None = None
        if n > 1 and self._bfs_reach(0) != n:
            raise GraphError("graph is not connected")

    # -- basic queries ----------------------------------------------------

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def edge_count(self) -> int:
        return sum(len(row) for row in self.adj) // 2

    def edges(self):
        """Yield all edges as pairs (u, v) with u < v, in ascending order."""
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def is_regular(self) -> int | None:
        """Return the common degree if the graph is regular, else None."""
        degrees = {len(row) for row in self.adj}
        return degrees.pop() if len(degrees) == 1 else None

    def max_degree(self) -> int:
        return max(len(row) for row in self.adj)

    def label_of(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def _bfs_reach(self, start: int) -> int:
        seen = bytearray(self.n)
        seen[start] = 1
        queue = deque([start])
        count = 1
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if not seen[v]:
                    seen[v] = 1
                    count += 1
                    queue.append(v)
        return count

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count()})"


def build_graph(n: int, edges, labels=None) -> Graph:
    """Build a validated :class:`Graph` from an edge list.

    Duplicate pairs are collapsed with a warning; loops, out-of-range ids
    and disconnected results raise :class:`GraphError`.
    """
    if n <= 0:
        raise GraphError("graph must have at least one vertex")
    seen: set[tuple[int, int]] = set()
    adjacency: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"loop edge ({u},{v})")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            warnings.warn(f"duplicate edge {key} collapsed", stacklevel=2)
            continue
        seen.add(key)
        adjacency[u].append(v)
        adjacency[v].append(u)
    return Graph(n, adjacency, labels=labels)


def connected_component(n: int, edges, root: int):
    """Restrict an edge list to the connected component of ``root``.

    Escape hatch for inputs that are allowed to be disconnected (for
    example tensor products of bipartite factors).  Returns
    ``(graph, old_to_new)`` where ``old_to_new`` maps surviving original
    ids to the contiguous ids of the new graph.
    """
    neighbors: dict[int, set[int]] = {v: set() for v in range(n)}
    for u, v in edges:
        neighbors[u].add(v)
        neighbors[v].add(u)
    component = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in neighbors[u]:
            if v not in component:
                component.add(v)
                queue.append(v)
    order = sorted(component)
    old_to_new = {old: new for new, old in enumerate(order)}
    kept = [
        (old_to_new[u], old_to_new[v])
        for u, v in edges
        if u in component and v in component
    ]
    return build_graph(len(order), kept), old_to_new


# -- distances, balls and spheres ------------------------------------------


def distances_from(g: Graph, x: int) -> tuple[int, ...]:
    """Exact breadth-first distances from ``x``, indexed by vertex id."""
    cached = g._dist_cache.get(x)
    if cached is not None:
        return cached
    dist = [-1] * g.n
    dist[x] = 0
    queue = deque([x])
    while queue:
        u = queue.popleft()
        du = dist[u]
        for v in g.adj[u]:
            if dist[v] < 0:
                dist[v] = du + 1
                queue.append(v)
    result = tuple(dist)
    g._dist_cache[x] = result
    return result


def distance(g: Graph, u: int, v: int) -> int:
    return distances_from(g, u)[v]


def sphere(g: Graph, x: int, k: int) -> tuple[int, ...]:
    """Vertices at distance exactly ``k`` from ``x``, ascending."""
    dist = distances_from(g, x)
    return tuple(v for v in range(g.n) if dist[v] == k)


def ball(g: Graph, x: int, k: int) -> tuple[int, ...]:
    """Vertices at distance at most ``k`` from ``x``, ascending."""
    dist = distances_from(g, x)
    return tuple(v for v in range(g.n) if dist[v] <= k)


@dataclass(frozen=True)
class LocalBall:
    """A radius-2 ball extracted as a standalone graph.

    ``to_parent`` maps local ids (0..size-1) back to the parent graph;
    ``root`` is the local id of the original center.
    """

    root: int
    radius: int
    subgraph: Graph
    to_parent: tuple[int, ...]


def incomplete_two_ball(g: Graph, x: int) -> LocalBall:
    """Induced subgraph on the 2-ball of ``x`` minus all edges inside the
    2-sphere.

    This local structure determines every curvature and flatness quantity
    at ``x``, which is what makes transcribed local counterexamples usable
    as if they were full graphs.
    """
    dist = distances_from(g, x)
    order = [x] + [v for v in range(g.n) if dist[v] == 1] + [
        v for v in range(g.n) if dist[v] == 2
    ]
    to_local = {parent: local for local, parent in enumerate(order)}
    edges = []
    for u in order:
        for v in g.adj[u]:
            if u < v and v in to_local and not (dist[u] == 2 and dist[v] == 2):
                edges.append((to_local[u], to_local[v]))
    sub = build_graph(len(order), edges)
    return LocalBall(root=0, radius=2, subgraph=sub, to_parent=tuple(order))


def induced_subgraph(g: Graph, vertices):
    """Induced subgraph on ``vertices`` (keeping all interior edges).

    Returns ``(graph, to_parent)``; raises if the result is disconnected.
    """
    order = sorted(set(vertices))
    to_local = {parent: local for local, parent in enumerate(order)}
    edges = [
        (to_local[u], to_local[v])
        for u in order
        for v in g.adj[u]
        if u < v and v in to_local
    ]
    return build_graph(len(order), edges), tuple(order)


# -- triangles, degrees and links -------------------------------------------


def triangles_on_edge(g: Graph, x: int, y: int) -> int:
    """Number of triangles containing the edge {x, y}."""
    if not g.has_edge(x, y):
        raise GraphError(f"({x},{y}) is not an edge")
    return len(set(g.adj[x]) & set(g.adj[y]))


def triangles_at_vertex(g: Graph, x: int) -> int:
    """Number of triangles containing the vertex ``x``."""
    return sum(triangles_on_edge(g, x, y) for y in g.adj[x]) // 2


def directional_degree(g: Graph, x: int, z: int, direction: str) -> int:
    """In/out-degree of ``z`` relative to the sphere structure around ``x``.

    With k = d(x, z), the in-degree counts neighbors of ``z`` at distance
    k-1 from ``x`` and the out-degree those at distance k+1.
    """
    if direction not in ("in", "out"):
        raise ValueError("direction must be 'in' or 'out'")
    dist = distances_from(g, x)
    k = dist[z]
    target = k - 1 if direction == "in" else k + 1
    return sum(1 for w in g.adj[z] if dist[w] == target)


def links(g: Graph, x: int, y1: int, y2: int) -> tuple[int, ...]:
    """All z in the 2-sphere of ``x`` adjacent to both ``y1`` and ``y2``."""
    dist = distances_from(g, x)
    if dist[y1] != 1 or dist[y2] != 1:
        raise GraphError("both arguments must be neighbors of the center")
    if y1 == y2:
        raise GraphError("link arguments must be distinct")
    common = set(g.adj[y1]) & set(g.adj[y2])
    return tuple(sorted(z for z in common if dist[z] == 2))


# -- girth -------------------------------------------------------------------


def girth(g: Graph) -> int | float:
    """Length of a shortest cycle, or ``math.inf`` for trees."""
    if g._girth_cache is not None:
        return g._girth_cache
    best: int | float = math.inf
    for root in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] >= best - 1:
                continue
            for v in g.adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif parent[u] != v:
                    # Non-tree edge closes a cycle through the BFS root.
                    best = min(best, dist[u] + dist[v] + 1)
    g._girth_cache = best
    return best


# -- bipartite matching ------------------------------------------------------


@dataclass(frozen=True)
class MatchingResult:
    """Maximum matching plus, when imperfect, a Hall-condition witness.

    ``pairs`` maps matched left vertices to right vertices.  When some left
    vertex is unmatched, ``hall_witness`` is a left set W whose combined
    neighborhood ``hall_neighborhood`` is strictly smaller than W.
    """

    pairs: dict
    unmatched_left: tuple
    hall_witness: tuple | None
    hall_neighborhood: tuple | None

    @property
    def perfect(self) -> bool:
        return not self.unmatched_left


def max_bipartite_matching(left, right, adjacent) -> MatchingResult:
    """Hopcroft-Karp maximum matching between two disjoint vertex sets.

    ``adjacent(u, v)`` decides whether left ``u`` may be matched to right
    ``v``.  Deterministic: vertices are processed in sorted order.
    """
    left = sorted(left)
    right = sorted(right)
    if set(left) & set(right):
        raise ValueError("left and right sets must be disjoint")
    adj = {u: [v for v in right if adjacent(u, v)] for u in left}
    match_l: dict = {}
    match_r: dict = {}
    inf = math.inf

    def bfs_layers():
        dist = {}
        queue = deque()
        for u in left:
            if u not in match_l:
                dist[u] = 0
                queue.append(u)
        found = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = match_r.get(v)
                if w is None:
                    found = True
                elif w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist, found

    def try_augment(u, dist):
        for v in adj[u]:
            w = match_r.get(v)
            if w is None or (dist.get(w) == dist[u] + 1 and try_augment(w, dist)):
                match_l[u] = v
                match_r[v] = u
                return True
        dist[u] = inf
        return False

    while True:
        dist, found = bfs_layers()
        if not found:
            break
        for u in left:
            if u not in match_l:
                try_augment(u, dist)

    unmatched = tuple(u for u in left if u not in match_l)
    witness = neighborhood = None
    if unmatched:
        # Alternating reachability from one exposed vertex yields a set W
        # with |N(W)| = |W| - 1, violating Hall's condition.
        w_set = {unmatched[0]}
        n_set: set = set()
        queue = deque([unmatched[0]])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if v not in n_set:
                    n_set.add(v)
                    w = match_r.get(v)
                    if w is not None and w not in w_set:
                        w_set.add(w)
                        queue.append(w)
        witness = tuple(sorted(w_set))
        neighborhood = tuple(sorted(n_set))
    return MatchingResult(
        pairs=dict(sorted(match_l.items())),
        unmatched_left=unmatched,
        hall_witness=witness,
        hall_neighborhood=neighborhood,
    )


# -- distance-regularity -----------------------------------------------------


@dataclass(frozen=True)
class IntersectionArray:
    """Distance-regular graph parameters {b_0,...,b_{d-1}; c_1,...,c_d}."""

    b: tuple[int, ...]
    c: tuple[int, ...]

    def __str__(self):
        return "{%s;%s}" % (
            ",".join(map(str, self.b)),
            ",".join(map(str, self.c)),
        )


@dataclass(frozen=True)
class DistanceRegularityViolation:
    """First witness that a graph is not distance-regular."""

    base: int
    vertex: int
    distance: int
    kind: str  # "degree", "diameter", "b" or "c"
    expected: int
    found: int


def intersection_array(g: Graph):
    """Check distance-regularity exhaustively.

    Returns an :class:`IntersectionArray` when, over every base vertex and
    every vertex at distance k from it, the out-degree b_k and in-degree
    c_k are constant; otherwise returns the first
    :class:`DistanceRegularityViolation` found.
    """
    d0 = g.is_regular()
    if d0 is None:
        degs = [g.degree(v) for v in range(g.n)]
        v_bad = degs.index(max(degs))
        return DistanceRegularityViolation(
            base=0, vertex=v_bad, distance=0, kind="degree",
            expected=min(degs), found=max(degs),
        )
    diameter = max(distances_from(g, 0))
    b: list[int | None] = [None] * diameter
    c: list[int | None] = [None] * diameter
    for x in range(g.n):
        dist = distances_from(g, x)
        ecc = max(dist)
        if ecc != diameter:
            return DistanceRegularityViolation(
                base=x, vertex=dist.index(ecc), distance=ecc,
                kind="diameter", expected=diameter, found=ecc,
            )
        for z in range(g.n):
            k = dist[z]
            if k < diameter:
                out = sum(1 for w in g.adj[z] if dist[w] == k + 1)
                if b[k] is None:
                    b[k] = out
                elif b[k] != out:
                    return DistanceRegularityViolation(
                        base=x, vertex=z, distance=k, kind="b",
                        expected=b[k], found=out,
                    )
            if k > 0:
                inn = sum(1 for w in g.adj[z] if dist[w] == k - 1)
                if c[k - 1] is None:
                    c[k - 1] = inn
                elif c[k - 1] != inn:
                    return DistanceRegularityViolation(
                        base=x, vertex=z, distance=k, kind="c",
                        expected=c[k - 1], found=inn,
                    )
    return IntersectionArray(b=tuple(b), c=tuple(c))
