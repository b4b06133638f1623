"""Exact Ollivier Ricci curvature via integral minimum-cost transport.

Everything in this module is exact: masses are `fractions.Fraction`, the
Wasserstein problem is scaled by the common denominator and solved as an
integer minimum-cost flow, and curvature values are returned as exact
rationals.  Optimal plans are deterministic; among all optimal plans the
solver returns one maximizing the mass kept in place (the diagonal), which
is the normal form used for displacement bookkeeping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from heapq import heappop, heappush

from .graph import (
    Graph,
    GraphError,
    distances_from,
    max_bipartite_matching,
    sphere,
    triangles_on_edge,
)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Measure:
    """Probability measure on graph vertices with exact rational masses."""

    support: dict

    def __post_init__(self):
        cleaned = {}
        total = ZERO
        for v in sorted(self.support):
            mass = Fraction(self.support[v])
            if mass < 0:
                raise ValueError(f"negative mass at vertex {v}")
            if mass > 0:
                cleaned[v] = mass
                total += mass
        if total != 1:
            raise ValueError(f"masses sum to {total}, expected 1")
        object.__setattr__(self, "support", cleaned)

    def mass(self, v: int) -> Fraction:
        return self.support.get(v, ZERO)

    def vertices(self) -> tuple[int, ...]:
        return tuple(self.support)


def vertex_measure(g: Graph, x: int, p) -> Measure:
    """Lazy random-walk measure: mass ``p`` at ``x``, ``(1-p)/deg`` at each
    neighbor."""
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError(f"idleness {p} outside [0,1]")
    support: dict[int, Fraction] = {}
    if p > 0:
        support[x] = p
    if p < 1:
        share = (1 - p) / g.degree(x)
        for y in g.adj[x]:
            support[y] = share
    return Measure(support)


@dataclass(frozen=True)
class TransportPlan:
    """Coupling between two measures; entries are exact rational masses."""

    entries: dict

    def first_marginal(self) -> dict:
        out: dict[int, Fraction] = {}
        for (u, _), mass in self.entries.items():
            out[u] = out.get(u, ZERO) + mass
        return out

    def second_marginal(self) -> dict:
        out: dict[int, Fraction] = {}
        for (_, v), mass in self.entries.items():
            out[v] = out.get(v, ZERO) + mass
        return out

    def satisfies_marginals(self, mu1: Measure, mu2: Measure) -> bool:
        return (
            self.first_marginal() == dict(mu1.support)
            and self.second_marginal() == dict(mu2.support)
        )

    def diagonal_mass(self) -> Fraction:
        return sum(
            (m for (u, v), m in self.entries.items() if u == v), start=ZERO
        )


@dataclass
class TransportResult:
    """Optimal transport cost, an optimal plan and a dual certificate.

    ``potential`` is computed on demand: it is an exact 1-Lipschitz function
    on the union of the supports whose pairing with ``mu1 - mu2`` equals the
    optimal cost, certifying optimality with zero duality gap.
    """

    cost: Fraction
    plan: TransportPlan
    graph: Graph
    mu1: Measure
    mu2: Measure
    _potential: dict | None = field(default=None, repr=False)

    @property
    def potential(self) -> dict:
        if self._potential is None:
            self._potential = _kantorovich_potential(
                self.graph, self.plan, self.mu1, self.mu2
            )
            gap = self.duality_gap()
            if gap != 0:
                raise RuntimeError(f"duality gap {gap} != 0")
        return self._potential

    def duality_gap(self) -> Fraction:
        phi = self.potential
        paired = sum(
            (
                phi[v] * (self.mu1.mass(v) - self.mu2.mass(v))
                for v in phi
            ),
            start=ZERO,
        )
        return self.cost - paired

    def potential_is_lipschitz(self) -> bool:
        phi = self.potential
        nodes = sorted(phi)
        for a in nodes:
            dist = distances_from(self.graph, a)
            for b in nodes:
                if abs(phi[a] - phi[b]) > dist[b]:
                    return False
        return True


def _min_cost_transport(supply, demand, cost):
    """Integer min-cost transportation by successive shortest paths.

    ``supply``/``demand`` are positive integers with equal totals and
    ``cost`` a nonnegative integer matrix.  Returns the flow matrix.
    Deterministic: Dijkstra ties break on node index.
    """
    m, k = len(supply), len(demand)
    n = m + k + 2
    s, t = m + k, m + k + 1
    pot = [0] * n
    flow = [[0] * k for _ in range(m)]
    left_supply = list(supply)
    left_demand = list(demand)
    remaining = sum(supply)
    while remaining > 0:
        dist = [None] * n
        parent = [-1] * n
        dist[s] = 0
        heap = [(0, s)]
        while heap:
            du, u = heappop(heap)
            if dist[u] is None or du > dist[u]:
                continue
            if u == s:
                arcs = [
                    (i, pot[s] - pot[i])
                    for i in range(m)
                    if left_supply[i] > 0
                ]
            elif u < m:
                arcs = [
                    (m + j, cost[u][j] + pot[u] - pot[m + j])
                    for j in range(k)
                ]
            elif u < m + k:
                j = u - m
                arcs = [
                    (i, -cost[i][j] + pot[u] - pot[i])
                    for i in range(m)
                    if flow[i][j] > 0
                ]
                if left_demand[j] > 0:
                    arcs.append((t, pot[u] - pot[t]))
            else:
                arcs = []
            for v, weight in arcs:
                nd = du + weight
                if dist[v] is None or nd < dist[v]:
                    dist[v] = nd
                    parent[v] = u
                    heappush(heap, (nd, v))
        if dist[t] is None:
            raise RuntimeError("transportation problem infeasible")
        for v in range(n):
            pot[v] += dist[v] if dist[v] is not None else dist[t]
        # Bottleneck along the found path, then push.
        bottleneck = remaining
        v = t
        while v != s:
            u = parent[v]
            if v == t:
                bottleneck = min(bottleneck, left_demand[u - m])
            elif u == s:
                bottleneck = min(bottleneck, left_supply[v])
            elif u >= m:
                bottleneck = min(bottleneck, flow[v][u - m])
            v = u
        v = t
        while v != s:
            u = parent[v]
            if v == t:
                left_demand[u - m] -= bottleneck
            elif u == s:
                left_supply[v] -= bottleneck
            elif u < m:
                flow[u][v - m] += bottleneck
            else:
                flow[v][u - m] -= bottleneck
            v = u
        remaining -= bottleneck
    return flow


def wasserstein(g: Graph, mu1: Measure, mu2: Measure) -> TransportResult:
    """Exact Wasserstein distance between two measures on ``g``.

    Costs are global graph distances.  The returned plan is integral on the
    grid of the common denominator and, among all optimal plans, maximizes
    the diagonal mass.
    """
    sources = mu1.vertices()
    sinks = mu2.vertices()
    scale = 1
    for measure in (mu1, mu2):
        for mass in measure.support.values():
            scale = scale * mass.denominator // math.gcd(
                scale, mass.denominator
            )
    supply = [int(mu1.support[u] * scale) for u in sources]
    demand = [int(mu2.support[v] * scale) for v in sinks]
    base = [
        [distances_from(g, u)[v] for v in sinks]
        for u in sources
    ]
    # Secondary objective: cost scaled up so that one unit of off-diagonal
    # mass can never trade against distance; minimizing the modified cost
    # minimizes (cost, -diagonal mass) lexicographically.
    big = scale + 1
    modified = [
        [base[i][j] * big + (0 if sources[i] == sinks[j] else 1) for j in range(len(sinks))]
        for i in range(len(sources))
    ]
    flow = _min_cost_transport(supply, demand, modified)
    cost_units = 0
    entries: dict[tuple[int, int], Fraction] = {}
    for i, u in enumerate(sources):
        for j, v in enumerate(sinks):
            if flow[i][j] > 0:
                cost_units += base[i][j] * flow[i][j]
                entries[(u, v)] = Fraction(flow[i][j], scale)
    return TransportResult(
        cost=Fraction(cost_units, scale),
        plan=TransportPlan(entries),
        graph=g,
        mu1=mu1,
        mu2=mu2,
    )


def _kantorovich_potential(g: Graph, plan: TransportPlan, mu1, mu2) -> dict:
    """1-Lipschitz dual certificate built from an optimal plan.

    Solves the difference-constraint system "phi is 1-Lipschitz" plus
    "phi(u) - phi(v) = d(u,v) on the support of the plan" by Bellman-Ford;
    a negative cycle would mean the plan is not optimal.
    """
    nodes = sorted(set(mu1.vertices()) | set(mu2.vertices()))
    arcs = []
    for a in nodes:
        dist = distances_from(g, a)
        for b in nodes:
            if a != b:
                arcs.append((b, a, dist[b]))  # phi(a) <= phi(b) + d(a,b)
    for (u, v), _ in plan.entries.items():
        if u != v:
            arcs.append((u, v, -distances_from(g, u)[v]))
    phi = {v: 0 for v in nodes}
    for round_no in range(len(nodes) + 1):
        changed = False
        for b, a, w in arcs:
            if phi[b] + w < phi[a]:
                phi[a] = phi[b] + w
                changed = True
        if not changed:
            break
    else:
        raise RuntimeError("plan is not optimal: dual system infeasible")
    return {v: Fraction(val) for v, val in phi.items()}


# -- curvature ---------------------------------------------------------------


def _require_edge(g: Graph, x: int, y: int):
    if not g.has_edge(x, y):
        raise GraphError(f"({x},{y}) is not an edge")


def kappa_p(g: Graph, x: int, y: int, p) -> Fraction:
    """Ollivier Ricci curvature with idleness ``p`` on the edge {x, y}."""
    _require_edge(g, x, y)
    p = Fraction(p)
    result = wasserstein(g, vertex_measure(g, x, p), vertex_measure(g, y, p))
    return 1 - result.cost


def kappa_lly(g: Graph, x: int, y: int) -> Fraction:
    """Lin-Lu-Yau curvature on an equal-degree edge.

    Computed through the idleness value 1/(d+1); edges with unequal
    endpoint degrees are not supported.
    """
    _require_edge(g, x, y)
    d = g.degree(x)
    if g.degree(y) != d:
        raise GraphError(
            f"kappa_LLY needs equal endpoint degrees, got {d} and {g.degree(y)}"
        )
    return Fraction(d + 1, d) * kappa_p(g, x, y, Fraction(1, d + 1))


def is_bone_idle(g: Graph, x: int, y: int) -> bool:
    """True when the curvature vanishes for every idleness on {x, y}.

    Concavity of the idleness-to-curvature map makes the two evaluations
    at p=0 and the Lin-Lu-Yau limit sufficient.
    """
    return kappa_p(g, x, y, ZERO) == 0 and kappa_lly(g, x, y) == 0


@dataclass(frozen=True)
class DisplacementHistogram:
    """How far an optimal plan moves the non-shared neighbor mass.

    ``n1``/``n2``/``n3`` count the vertices private to ``x`` whose mass
    travels distance 1, 2 or 3 to a vertex private to ``y``.
    """

    n1: int
    n2: int
    n3: int
    t_xy: tuple[int, ...]
    v_x: tuple[int, ...]
    v_y: tuple[int, ...]

    @property
    def weighted_sum(self) -> int:
        return self.n1 + 2 * self.n2 + 3 * self.n3


def displacement_histogram(g: Graph, x: int, y: int) -> DisplacementHistogram:
    """Normal-form optimal displacement for idleness 1/(d+1) on {x, y}.

    The diagonal-maximizing optimal plan fixes x, y and their common
    neighbors pointwise and pairs each remaining neighbor of x with a
    single remaining neighbor of y (all masses are 1/(d+1), so the integral
    plan never splits mass).
    """
    _require_edge(g, x, y)
    d = g.degree(x)
    if g.degree(y) != d:
        raise GraphError("displacement histogram needs equal endpoint degrees")
    p = Fraction(1, d + 1)
    result = wasserstein(g, vertex_measure(g, x, p), vertex_measure(g, y, p))
    common = set(g.adj[x]) & set(g.adj[y])
    fixed = common | {x, y}
    v_x = tuple(u for u in g.adj[x] if u not in fixed)
    v_y = tuple(v for v in g.adj[y] if v not in fixed)
    plan = result.plan.entries
    for u in sorted(fixed):
        if plan.get((u, u), ZERO) != p:
            raise RuntimeError(f"optimal plan does not fix shared vertex {u}")
    counts = [0, 0, 0]
    for u in v_x:
        targets = [v for (uu, v) in plan if uu == u]
        if len(targets) != 1 or targets[0] not in v_y:
            raise RuntimeError(f"plan splits or misroutes mass at {u}")
        moved = distances_from(g, u)[targets[0]]
        counts[moved - 1] += 1
    return DisplacementHistogram(
        n1=counts[0],
        n2=counts[1],
        n3=counts[2],
        t_xy=tuple(sorted(common)),
        v_x=v_x,
        v_y=v_y,
    )


@dataclass(frozen=True)
class MatchingCurvature:
    """Matching characterization of extremal curvature on a triangle-free
    edge."""

    kappa0_zero: bool
    lly_max: bool
    kappa0_matching: object
    lly_matching: object


def matching_curvature_check(g: Graph, x: int, y: int) -> MatchingCurvature:
    """Decide the extremal curvature values of a triangle-free edge by
    perfect matchings.

    Vertices u and v may be matched when d(u, v) <= 1, i.e. when one unit
    of mass moves at cost at most 1.
    """
    _require_edge(g, x, y)
    if triangles_on_edge(g, x, y) > 0:
        raise GraphError("matching characterization needs a triangle-free edge")

    def near(u, v):
        return distances_from(g, u)[v] <= 1

    s_x = sphere(g, x, 1)
    s_y = sphere(g, y, 1)
    full = max_bipartite_matching(s_x, s_y, near)
    reduced = max_bipartite_matching(
        [u for u in s_x if u != y], [v for v in s_y if v != x], near
    )
    return MatchingCurvature(
        kappa0_zero=full.perfect,
        lly_max=reduced.perfect,
        kappa0_matching=full,
        lly_matching=reduced,
    )


@dataclass(frozen=True)
class CurvatureUpperBounds:
    k0_bound: Fraction
    lly_bound: Fraction


def curvature_upper_bounds(g: Graph, x: int, y: int) -> CurvatureUpperBounds:
    """Triangle-count upper bounds for both curvatures on a regular graph."""
    _require_edge(g, x, y)
    d = g.is_regular()
    if d is None:
        raise GraphError("curvature upper bounds need a regular graph")
    triangles = triangles_on_edge(g, x, y)
    return CurvatureUpperBounds(
        k0_bound=Fraction(triangles, d),
        lly_bound=Fraction(2 + triangles, d),
    )
