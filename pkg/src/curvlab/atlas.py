"""Deterministic generators for the named test graphs.

Includes the classical families (hypercubes, cycles, complete and complete
bipartite graphs), the specific small graphs used as curvature examples
and counterexamples (triplex, icosidodecahedral graph, Shrikhande graph,
the design incidence graph, and three transcribed local 2-balls), plus a
seeded pairing-model generator for random regular graphs.
"""

from __future__ import annotations

import random

from .graph import Graph, GraphError, build_graph


def hypercube(d: int) -> Graph:
    """d-dimensional hypercube on 2^d bitstring vertices."""
    if not 1 <= d <= 16:
        raise ValueError("hypercube dimension must be in 1..16")
    n = 1 << d
    edges = [(v, v ^ (1 << bit)) for v in range(n) for bit in range(d) if v < v ^ (1 << bit)]
    return build_graph(n, edges, labels=[f"{v:0{d}b}" for v in range(n)])


def cycle(n: int) -> Graph:
    if not 3 <= n <= 4096:
        raise ValueError("cycle length must be in 3..4096")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if not 2 <= n <= 256:
        raise ValueError("complete graph size must be in 2..256")
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(m: int, n: int) -> Graph:
    """K_{m,n} with left part 0..m-1 and right part m..m+n-1."""
    if not (1 <= m <= 256 and 1 <= n <= 256):
        raise ValueError("part sizes must be in 1..256")
    edges = [(i, m + j) for i in range(m) for j in range(n)]
    return build_graph(m + n, edges)


def triplex():
    """3-regular 12-vertex graph: a 12-cycle with six long chords.

    Every edge has vanishing Lin-Lu-Yau curvature while the idleness-0
    curvature is -1/3, so the graph separates the two Ollivier notions.
    """
    edges = [(i, (i + 1) % 12) for i in range(12)]
    edges += [(0, 6), (1, 9), (2, 7), (3, 11), (4, 8), (5, 10)]
    return build_graph(12, edges, labels=[f"x{i + 1}" for i in range(12)])


def _icosahedron() -> Graph:
    # Pentagonal antiprism (vertices 0..4 top, 5..9 bottom) plus two apexes.
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))
        edges.append((5 + i, 5 + (i + 1) % 5))
        edges.append((i, 5 + i))
        edges.append((i, 5 + (i + 1) % 5))
        edges.append((10, i))
        edges.append((11, 5 + i))
    return build_graph(12, edges)


def icosidodecahedron():
    """4-regular 30-vertex rectification of the icosahedron.

    Vertices are icosahedron edges; two are adjacent when they share an
    icosahedron vertex and their far endpoints are adjacent (i.e. they
    bound a common triangular face).  All edges are bone-idle.
    """
    ico = _icosahedron()
    ico_edges = sorted(ico.edges())
    index = {e: i for i, e in enumerate(ico_edges)}
    edges = []
    for a, b in ico_edges:
        for c in set(ico.adj[a]) & set(ico.adj[b]):
            for other in ((a, c), (b, c)):
                key = (min(other), max(other))
                if index[(a, b)] < index[key]:
                    edges.append((index[(a, b)], index[key]))
    labels = [f"{a}-{b}" for a, b in ico_edges]
    return build_graph(30, edges, labels=labels)


def shrikhande():
    """Cayley graph of Z4 x Z4 with generators +/-(0,1), +/-(1,0), +/-(1,1)."""
    gens = [(0, 1), (0, 3), (1, 0), (3, 0), (1, 1), (3, 3)]
    edges = []
    for i in range(4):
        for j in range(4):
            u = 4 * i + j
            for di, dj in gens:
                v = 4 * ((i + di) % 4) + (j + dj) % 4
                if u < v:
                    edges.append((u, v))
    labels = [f"({i},{j})" for i in range(4) for j in range(4)]
    return build_graph(16, edges, labels=labels)


def incidence_11_6_3():
    """Bipartite point/block incidence graph of the (11,6,3) design.

    Blocks are the translates of the complement of the quadratic residues
    modulo 11; the graph is 6-regular, distance-regular with intersection
    array {6,5,3;1,3,6}, and has girth 4.
    """
    residues = {pow(r, 2, 11) for r in range(1, 11)}
    base = sorted(set(range(11)) - residues)  # 0 plus the non-residues
    edges = []
    for block in range(11):
        for r in base:
            edges.append(((block + r) % 11, 11 + block))
    labels = [f"p{i}" for i in range(11)] + [f"B{j}" for j in range(11)]
    return build_graph(22, edges, labels=labels)


def figure3_local():
    """Seven-vertex local 2-ball with no flatness certificate.

    Center 0 with neighbors 1,2,3 (1~2) and outer vertices 4,5,6; the
    forced center column of any assignment matrix collides, so the center
    is not Ricci flat for any flavor.
    """
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (2, 5), (3, 5), (3, 6)]
    labels = ["x"] + [f"v{i}" for i in range(1, 7)]
    return build_graph(7, edges, labels=labels)


def figure5_local():
    """22-vertex triangle-free local 2-ball around a 6-regular hub.

    Every pair of hub neighbors named by an outer subscript is linked by
    that outer vertex; six of the nine pairs are doubly linked.  The hub
    has vanishing Bakry-Emery curvature, every outer vertex has in-degree
    2, yet all hub edges have idleness-0 curvature -1/3.
    """
    doubled = [(1, 2), (1, 4), (2, 5), (3, 4), (3, 6), (5, 6)]
    single = [(1, 6), (2, 3), (4, 5)]
    edges = [(0, i) for i in range(1, 7)]
    labels = ["x"] + [f"v{i}" for i in range(1, 7)]
    next_id = 7
    for a, b in doubled:
        for tick in ("", "'"):
            edges += [(a, next_id), (b, next_id)]
            labels.append(f"v{a}{b}{tick}")
            next_id += 1
    for a, b in single:
        edges += [(a, next_id), (b, next_id)]
        labels.append(f"v{a}{b}")
        next_id += 1
    return build_graph(next_id, edges, labels=labels)


def figure6_local():
    """17-vertex local 2-ball: zero Ollivier curvature on all hub edges
    but strictly negative Bakry-Emery curvature at the hub.

    One outer vertex has in-degree 3, which is exactly the hypothesis
    that fails for the triangle-free comparison theorem.
    """
    spokes = {
        1: (6, 7, 9, 10),
        2: (8, 7, 9, 12),
        3: (9, 10, 11, 14),
        4: (10, 12, 13, 15),
        5: (12, 14, 15, 16),
    }
    edges = [(0, i) for i in range(1, 6)]
    for hub, outer in spokes.items():
        edges += [(hub, z) for z in outer]
    labels = [f"x{i + 1}" for i in range(17)]
    return build_graph(17, edges, labels=labels)


def random_regular(n: int, d: int, seed: int, max_tries: int = 200) -> Graph:
    """Seeded pairing-model random d-regular connected simple graph.

    Pairs degree stubs uniformly and reshuffles only the colliding stubs
    (loops or repeated edges) until all are placed; restarts when the
    leftover stubs cannot be repaired or the result is disconnected.
    """
    if n * d % 2 != 0:
        raise ValueError("n*d must be even")
    if not 0 < d < n:
        raise ValueError("need 0 < d < n")
    rng = random.Random(seed)

    def pairing():
        edges: set[tuple[int, int]] = set()
        stubs = [v for v in range(n) for _ in range(d)]
        while stubs:
            leftover: dict[int, int] = {}
            rng.shuffle(stubs)
            for u, v in zip(stubs[::2], stubs[1::2]):
                key = (u, v) if u < v else (v, u)
                if u != v and key not in edges:
                    edges.add(key)
                else:
                    leftover[u] = leftover.get(u, 0) + 1
                    leftover[v] = leftover.get(v, 0) + 1
            stubs = [v for v, count in leftover.items() for _ in range(count)]
            if stubs and not any(
                u != v and (min(u, v), max(u, v)) not in edges
                for u in leftover
                for v in leftover
            ):
                return None  # stuck: no placeable pair remains
        return edges

    for _ in range(max_tries):
        edges = pairing()
        if edges is None:
            continue
        try:
            return build_graph(n, sorted(edges))
        except GraphError:
            continue
    raise RuntimeError(f"no connected {d}-regular graph found for seed {seed}")


# name -> (factory, parameter names); integers parsed by the CLI.
REGISTRY = {
    "hypercube": (hypercube, ("d",)),
    "cycle": (cycle, ("n",)),
    "complete": (complete, ("n",)),
    "complete_bipartite": (complete_bipartite, ("m", "n")),
    "triplex": (triplex, ()),
    "icosidodecahedron": (icosidodecahedron, ()),
    "shrikhande": (shrikhande, ()),
    "incidence_11_6_3": (incidence_11_6_3, ()),
    "figure3_local": (figure3_local, ()),
    "figure5_local": (figure5_local, ()),
    "figure6_local": (figure6_local, ()),
    "random_regular": (random_regular, ("n", "d", "seed")),
}


def make(name: str, *params) -> Graph:
    """Instantiate a registry graph by name."""
    if name not in REGISTRY:
        raise KeyError(f"unknown atlas graph {name!r}")
    factory, names = REGISTRY[name]
    if len(params) != len(names):
        raise ValueError(
            f"{name} expects parameters {names}, got {len(params)}"
        )
    return factory(*params)
