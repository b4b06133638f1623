"""Cartesian, tensor and strong graph products and their curvature checks.

Product vertices carry coordinates into the two factors.  The tensor
product of two bipartite graphs splits into two components; construction
then requires naming a root whose component is kept (everything computed
here is local, so restricting to a component is harmless).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import bakry_emery, transport
from .flatness import (
    AssignmentMatrix,
    FlatnessVerdict,
    search_flatness,
    verify_certificate,
)
from .graph import Graph, GraphError, build_graph, connected_component

KINDS = ("cartesian", "tensor", "strong")


@dataclass(frozen=True)
class ProductGraph:
    """A graph product together with its coordinate bookkeeping."""

    graph: Graph
    kind: str
    factor_dims: tuple[int, int]
    coords: tuple[tuple[int, int], ...]
    index: dict

    def vertex(self, gi: int, hi: int) -> int:
        return self.index[(gi, hi)]


def _product_edges(g: Graph, h: Graph, kind: str):
    edges = []
    if kind in ("cartesian", "strong"):
        for x1, x2 in g.edges():
            for y in range(h.n):
                edges.append((x1 * h.n + y, x2 * h.n + y))  # horizontal
        for x in range(g.n):
            for y1, y2 in h.edges():
                edges.append((x * h.n + y1, x * h.n + y2))  # vertical
    if kind in ("tensor", "strong"):
        for x1, x2 in g.edges():
            for y1, y2 in h.edges():
                edges.append((x1 * h.n + y1, x2 * h.n + y2))  # diagonal
                edges.append((x1 * h.n + y2, x2 * h.n + y1))
    return edges


def product(g: Graph, h: Graph, kind: str,
            component_root: tuple[int, int] | None = None) -> ProductGraph:
    """Build a graph product; ``component_root`` opts into keeping only
    that vertex's component when the full product is disconnected."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    n = g.n * h.n
    edges = _product_edges(g, h, kind)
    labels = [
        f"(g:{gi},h:{hi})" for gi in range(g.n) for hi in range(h.n)
    ]
    try:
        graph = build_graph(n, edges, labels=labels)
        coords = tuple((v // h.n, v % h.n) for v in range(n))
        index = {coord: v for v, coord in enumerate(coords)}
    except GraphError:
        if component_root is None:
            raise GraphError(
                f"{kind} product is disconnected; pass component_root to "
                "keep one component"
            )
        root = component_root[0] * h.n + component_root[1]
        graph, old_to_new = connected_component(n, edges, root)
        coord_list: list[tuple[int, int]] = [(-1, -1)] * graph.n
        for old, new in old_to_new.items():
            coord_list[new] = (old // h.n, old % h.n)
        coords = tuple(coord_list)
        index = {coord: new for new, coord in enumerate(coords)}
        graph = Graph(
            graph.n,
            graph.adj,
            labels=[f"(g:{gi},h:{hi})" for gi, hi in coords],
        )
    return ProductGraph(
        graph=graph, kind=kind, factor_dims=(g.n, h.n),
        coords=coords, index=index,
    )


def classify_edge(p: ProductGraph, u: int, v: int) -> str:
    """Classify a product edge as horizontal, vertical or diagonal."""
    if not p.graph.has_edge(u, v):
        raise GraphError(f"({u},{v}) is not an edge of the product")
    (g1, h1), (g2, h2) = p.coords[u], p.coords[v]
    if h1 == h2:
        return "horizontal"
    if g1 == g2:
        return "vertical"
    return "diagonal"


def edge_class_counts(p: ProductGraph) -> dict:
    counts = {"horizontal": 0, "vertical": 0, "diagonal": 0}
    for u, v in p.graph.edges():
        counts[classify_edge(p, u, v)] += 1
    return counts


# -- curvature checks on products ---------------------------------------------


@dataclass(frozen=True)
class CartesianBeRow:
    vertex: tuple[int, int]
    factor_values: tuple[float, float]
    expected: float
    computed: float
    agree: bool


def check_cartesian_be(g: Graph, h: Graph, samples=None,
                       tol: float = 1e-6):
    """Verify the min formula for Bakry-Emery curvature on Cartesian
    product vertices."""
    if g.is_regular() is None or h.is_regular() is None:
        raise GraphError("the min formula needs regular factors")
    if samples is None:
        samples = [(0, 0)]
    prod = product(g, h, "cartesian")
    rows = []
    for x, y in samples:
        kg = bakry_emery.curvature(g, x).value
        kh = bakry_emery.curvature(h, y).value
        expected = min(kg, kh)
        computed = bakry_emery.curvature(prod.graph, prod.vertex(x, y)).value
        rows.append(
            CartesianBeRow(
                vertex=(x, y),
                factor_values=(kg, kh),
                expected=expected,
                computed=computed,
                agree=abs(expected - computed) <= tol,
            )
        )
    return rows


@dataclass(frozen=True)
class StrongBoundRow:
    edge: tuple[int, int]
    orientation: str
    notion: str
    factor_value: Fraction
    lower_bound: Fraction
    product_value: Fraction
    holds: bool


def check_strong_bounds(g: Graph, h: Graph, sample_edges=None):
    """Exact lower curvature bounds on horizontal/vertical strong-product
    edges in terms of the factor curvatures.

    ``sample_edges`` is a list of (orientation, factor_edge, other_coord)
    triples; by default the first factor edge is checked against every
    coordinate of the other factor's vertex 0.
    """
    dg, dh = g.is_regular(), h.is_regular()
    if dg is None or dh is None:
        raise GraphError("strong-product bounds need regular factors")
    prod = product(g, h, "strong")
    d_prod = dg + dh + dg * dh
    if sample_edges is None:
        sample_edges = []
        gx1, gx2 = next(g.edges())
        hy1, hy2 = next(h.edges())
        sample_edges.append(("horizontal", (gx1, gx2), 0))
        sample_edges.append(("vertical", (hy1, hy2), 0))
    rows = []
    for orientation, (a, b), other in sample_edges:
        if orientation == "horizontal":
            u, v = prod.vertex(a, other), prod.vertex(b, other)
            factor_graph, scale = g, Fraction(dg * (dh + 1), d_prod)
        else:
            u, v = prod.vertex(other, a), prod.vertex(other, b)
            factor_graph, scale = h, Fraction(dh * (dg + 1), d_prod)
        for notion, fn in (("kappa_0", lambda gr, s, t: transport.kappa_p(gr, s, t, 0)),
                           ("kappa_LLY", transport.kappa_lly)):
            factor_value = fn(factor_graph, a, b)
            bound = scale * factor_value
            value = fn(prod.graph, u, v)
            rows.append(
                StrongBoundRow(
                    edge=(u, v),
                    orientation=orientation,
                    notion=notion,
                    factor_value=factor_value,
                    lower_bound=bound,
                    product_value=value,
                    holds=value >= bound,
                )
            )
    return rows


def diagonal_kappa_report(g: Graph, h: Graph, limit: int = 6):
    """Idleness-0 and LLY curvature of the first few diagonal edges of the
    strong product.

    No sign is asserted: unlike horizontal and vertical edges, diagonal
    edges of strong products can turn negative even for flat factors.
    """
    prod = product(g, h, "strong")
    rows = []
    for u, v in prod.graph.edges():
        if classify_edge(prod, u, v) == "diagonal":
            rows.append(
                {
                    "edge": (u, v),
                    "kappa_0": transport.kappa_p(prod.graph, u, v, 0),
                    "kappa_LLY": transport.kappa_lly(prod.graph, u, v),
                }
            )
            if len(rows) >= limit:
                break
    return rows


# -- flatness preservation -----------------------------------------------------


def _eta(cert: AssignmentMatrix, i: int, u: int) -> int:
    """Image of u under the i-th certificate map (center goes to the i-th
    neighbor)."""
    if u == cert.center:
        return cert.neighbors[i]
    return cert.entries[i][cert.neighbors.index(u)]


def product_certificate(prod: ProductGraph, cert_g: AssignmentMatrix,
                        cert_h: AssignmentMatrix) -> AssignmentMatrix:
    """Explicit certificate at (x, y) in a product, composed from factor
    certificates.

    Horizontal neighbors use the first factor's maps with the second
    coordinate frozen, vertical neighbors the mirror image, and diagonal
    neighbors apply both factor maps at once.  This is exactly the
    composition that proves flatness is preserved by all three products.
    """
    x, y = cert_g.center, cert_h.center
    center = prod.vertex(x, y)
    neighbors = tuple(sorted(prod.graph.adj[center]))

    def mapping_for(w):
        gi, hi = prod.coords[w]
        if hi == y:
            i = cert_g.neighbors.index(gi)
            return lambda ug, uh: (_eta(cert_g, i, ug), uh)
        if gi == x:
            k = cert_h.neighbors.index(hi)
            return lambda ug, uh: (ug, _eta(cert_h, k, uh))
        i = cert_g.neighbors.index(gi)
        k = cert_h.neighbors.index(hi)
        return lambda ug, uh: (_eta(cert_g, i, ug), _eta(cert_h, k, uh))

    entries = []
    for w in neighbors:
        eta = mapping_for(w)
        row = tuple(prod.vertex(*eta(*prod.coords[u])) for u in neighbors)
        entries.append(row)
    return AssignmentMatrix(
        center=center, neighbors=neighbors, entries=tuple(entries)
    )


@dataclass(frozen=True)
class FlatnessPreservationReport:
    kind: str
    flavor: str
    factor_verdicts: tuple[FlatnessVerdict, FlatnessVerdict]
    constructed: AssignmentMatrix
    constructed_valid: bool
    violations: tuple
    search_verdict: FlatnessVerdict | None


def check_flatness_preservation(g: Graph, h: Graph, kind: str, x: int, y: int,
                                flavor: str = "plain", run_search: bool | None = None,
                                search_cap: int = 12) -> FlatnessPreservationReport:
    """Check that flatness of the factors transfers to the product.

    Both factor vertices must be certified for the flavor.  The composed
    product certificate is always verified directly; the independent
    product search is run only when the product degree is within the cap
    (or when forced via ``run_search``).
    """
    verdict_g = search_flatness(g, x, flavor)
    verdict_h = search_flatness(h, y, flavor)
    if not (verdict_g.found and verdict_h.found):
        raise GraphError(
            f"factors are not both {flavor}-certified at ({x},{y})"
        )
    prod = product(g, h, kind, component_root=(x, y))
    cert = product_certificate(prod, verdict_g.certificate, verdict_h.certificate)
    check = verify_certificate(prod.graph, cert.center, cert, flavor)
    search_verdict = None
    degree = prod.graph.degree(cert.center)
    if run_search is None:
        run_search = degree <= search_cap
    if run_search:
        search_verdict = search_flatness(prod.graph, cert.center, flavor,
                                         cap=max(search_cap, degree))
    return FlatnessPreservationReport(
        kind=kind,
        flavor=flavor,
        factor_verdicts=(verdict_g, verdict_h),
        constructed=cert,
        constructed_valid=check.valid,
        violations=check.violations,
        search_verdict=search_verdict,
    )
