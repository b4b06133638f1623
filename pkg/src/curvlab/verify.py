"""Automated verification suites for the structural curvature theorems.

Each suite sweeps a pool of graphs (named examples plus seeded random
regular graphs) and checks one family of exact statements: curvature
comparisons and upper bounds, matching characterizations, flatness
equivalences, product formulas and the distance-regular extremal values.
Suites return structured results with a reproducer payload for every
violation, so a failing run can be replayed from a single file.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import atlas, bakry_emery, transport
from .flatness import kdd_matrix, search_flatness, verify_certificate
from .graph import (
    Graph,
    directional_degree,
    girth,
    intersection_array,
    IntersectionArray,
    sphere,
    triangles_at_vertex,
    triangles_on_edge,
)
from .graphio import emit_edgelist
from .products import (
    check_cartesian_be,
    check_flatness_preservation,
    check_strong_bounds,
    classify_edge,
    diagonal_kappa_report,
    product,
)

BE_SLACK = 1e-8
BE_VALUE_TOL = 1e-6
IDLENESS_GRID = [Fraction(k, 8) for k in range(9)]


@dataclass(frozen=True)
class Violation:
    suite: str
    graph_name: str
    detail: str
    reproducer: dict


@dataclass
class SuiteResult:
    suite: str
    checks: int = 0
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def merge(self, other: "SuiteResult"):
        self.checks += other.checks
        self.violations.extend(other.violations)
        self.notes.extend(other.notes)


def _reproducer(g: Graph, detail: str) -> dict:
    return {"edgelist": emit_edgelist(g), "detail": detail}


def _violate(result: SuiteResult, g: Graph, name: str, detail: str):
    result.violations.append(
        Violation(
            suite=result.suite,
            graph_name=name,
            detail=detail,
            reproducer=_reproducer(g, detail),
        )
    )


# -- graph pools ---------------------------------------------------------------


def atlas_regular_pool():
    """Regular named graphs used by the per-edge/per-vertex fuzz suites."""
    return [
        ("Q2", atlas.hypercube(2)),
        ("Q3", atlas.hypercube(3)),
        ("Q4", atlas.hypercube(4)),
        ("C5", atlas.cycle(5)),
        ("C6", atlas.cycle(6)),
        ("K4", atlas.complete(4)),
        ("K33", atlas.complete_bipartite(3, 3)),
        ("triplex", atlas.triplex()),
        ("shrikhande", atlas.shrikhande()),
        ("icosidodecahedron", atlas.icosidodecahedron()),
        ("incidence_11_6_3", atlas.incidence_11_6_3()),
    ]


def seeded_pool(seeds: int, max_n: int, max_d: int):
    """Deterministic random regular graphs, one per seed."""
    pool = []
    for seed in range(seeds):
        rng = random.Random(seed)
        degrees = [d for d in (3, 4, 5) if d <= min(max_d, max_n - 2)]
        d = rng.choice(degrees)
        sizes = [n for n in range(d + 2, max_n + 1) if n * d % 2 == 0]
        n = rng.choice(sizes)
        pool.append((f"random(n={n},d={d},seed={seed})",
                     atlas.random_regular(n, d, seed)))
    return pool


def full_pool(seeds: int, max_n: int, max_d: int):
    return atlas_regular_pool() + seeded_pool(seeds, max_n, max_d)


# -- per-graph check bodies ----------------------------------------------------


def check_thm_1_1_graph(result: SuiteResult, name: str, g: Graph):
    """Positive LLY curvature forces non-negative idleness-0 curvature;
    the idleness-to-curvature map is concave, dominated by the LLY value,
    and the normal-form displacement sum is bounded by the degree."""
    d = g.is_regular()
    for x, y in g.edges():
        lly = transport.kappa_lly(g, x, y)
        grid = [transport.kappa_p(g, x, y, p) for p in IDLENESS_GRID]
        k0 = grid[0]
        result.checks += 1
        if lly > 0 and k0 < 0:
            _violate(result, g, name,
                     f"edge ({x},{y}): kappa_LLY={lly} > 0 but kappa_0={k0} < 0")
        result.checks += 1
        for i in range(1, len(grid) - 1):
            if grid[i - 1] + grid[i + 1] > 2 * grid[i]:
                _violate(result, g, name,
                         f"edge ({x},{y}): concavity fails at p={IDLENESS_GRID[i]}")
        # Sharp consequence of concavity: kappa_p <= (1-p) * kappa_LLY,
        # which gives kappa_p <= kappa_LLY whenever the latter is >= 0.
        result.checks += 1
        if any(value > (1 - p) * lly
               for p, value in zip(IDLENESS_GRID, grid)):
            _violate(result, g, name,
                     f"edge ({x},{y}): some kappa_p exceeds (1-p)*kappa_LLY")
        if lly >= 0 and any(value > lly for value in grid):
            _violate(result, g, name,
                     f"edge ({x},{y}): some kappa_p exceeds kappa_LLY={lly}")
        hist = transport.displacement_histogram(g, x, y)
        result.checks += 1
        if hist.n1 + hist.n2 + hist.n3 != len(hist.v_x):
            _violate(result, g, name,
                     f"edge ({x},{y}): histogram does not cover the moved set")
        mid = transport.kappa_p(g, x, y, Fraction(1, d + 1))
        if mid > 0 and hist.weighted_sum > d:
            _violate(result, g, name,
                     f"edge ({x},{y}): displacement sum {hist.weighted_sum} > d={d}")


def check_thm_2_5_graph(result: SuiteResult, name: str, g: Graph):
    """Triangle-count upper bounds for both Ollivier notions, exactly."""
    for x, y in g.edges():
        bounds = transport.curvature_upper_bounds(g, x, y)
        result.checks += 1
        if transport.kappa_p(g, x, y, 0) > bounds.k0_bound:
            _violate(result, g, name, f"edge ({x},{y}): kappa_0 above bound")
        result.checks += 1
        if transport.kappa_lly(g, x, y) > bounds.lly_bound:
            _violate(result, g, name, f"edge ({x},{y}): kappa_LLY above bound")


def check_thm_2_10_graph(result: SuiteResult, name: str, g: Graph):
    """Triangle-count upper bound for Bakry-Emery curvature."""
    for x in range(g.n):
        bound = float(bakry_emery.be_upper_bound(g, x))
        value = bakry_emery.curvature(g, x).value
        result.checks += 1
        if value > bound + BE_SLACK:
            _violate(result, g, name, f"vertex {x}: K_inf {value} > {bound}")


def check_remark_4_4_graph(result: SuiteResult, name: str, g: Graph):
    """Perfect-matching characterization of extremal curvature on
    triangle-free edges."""
    d = g.is_regular()
    for x, y in g.edges():
        if triangles_on_edge(g, x, y) > 0:
            continue
        record = transport.matching_curvature_check(g, x, y)
        k0 = transport.kappa_p(g, x, y, 0)
        lly = transport.kappa_lly(g, x, y)
        result.checks += 1
        if record.kappa0_zero != (k0 == 0):
            _violate(result, g, name,
                     f"edge ({x},{y}): matching says kappa0==0 is "
                     f"{record.kappa0_zero} but kappa_0={k0}")
        result.checks += 1
        if record.lly_max != (lly == Fraction(2, d)):
            _violate(result, g, name,
                     f"edge ({x},{y}): matching says lly max is "
                     f"{record.lly_max} but kappa_LLY={lly}")


def _eligible_vertex(g: Graph, x: int) -> bool:
    """Triangle-free at x with in-degree at most 2 on the 2-sphere."""
    if triangles_at_vertex(g, x) > 0:
        return False
    return all(
        directional_degree(g, x, z, "in") <= 2 for z in sphere(g, x, 2)
    )


def check_thm_4_6_graph(result: SuiteResult, name: str, g: Graph):
    """On eligible vertices, extremal curvature on all incident edges is
    equivalent to symmetric (resp. reflexive-symmetric) flatness."""
    d = g.is_regular()
    for x in range(g.n):
        if not _eligible_vertex(g, x):
            continue
        k0_all_zero = all(
            transport.kappa_p(g, x, y, 0) == 0 for y in g.adj[x]
        )
        lly_all_max = all(
            transport.kappa_lly(g, x, y) == Fraction(2, d) for y in g.adj[x]
        )
        s_flat = search_flatness(g, x, "S").found
        rs_flat = search_flatness(g, x, "RS").found
        result.checks += 1
        if k0_all_zero != s_flat:
            _violate(result, g, name,
                     f"vertex {x}: kappa0 all-zero={k0_all_zero} but "
                     f"S-flat={s_flat}")
        result.checks += 1
        if lly_all_max != rs_flat:
            _violate(result, g, name,
                     f"vertex {x}: lly all-max={lly_all_max} but "
                     f"RS-flat={rs_flat}")


def check_thm_1_2_graph(result: SuiteResult, name: str, g: Graph):
    """On eligible vertices, extremal Ollivier curvature pins down the
    sign (resp. the value 2) of the Bakry-Emery curvature."""
    d = g.is_regular()
    for x in range(g.n):
        if not _eligible_vertex(g, x):
            continue
        k0_all_zero = all(
            transport.kappa_p(g, x, y, 0) == 0 for y in g.adj[x]
        )
        lly_all_max = all(
            transport.kappa_lly(g, x, y) == Fraction(2, d) for y in g.adj[x]
        )
        if not (k0_all_zero or lly_all_max):
            continue
        value = bakry_emery.curvature(g, x).value
        if k0_all_zero:
            result.checks += 1
            if value < -BE_SLACK:
                _violate(result, g, name,
                         f"vertex {x}: kappa0 all-zero but K_inf={value} < 0")
        if lly_all_max:
            result.checks += 1
            if abs(value - 2) > BE_VALUE_TOL:
                _violate(result, g, name,
                         f"vertex {x}: lly all-max but K_inf={value} != 2")


# -- suite runners -------------------------------------------------------------


def _pool_suite(check, suite_name, seeds, max_n, max_d, jobs,
                regular_only=True):
    result = SuiteResult(suite=suite_name)
    pool = full_pool(seeds, max_n, max_d)
    if regular_only:
        pool = [(name, g) for name, g in pool if g.is_regular() is not None]

    def worker(item):
        name, g = item
        local = SuiteResult(suite=suite_name)
        check(local, name, g)
        return local

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool_exec:
            for local in pool_exec.map(worker, pool):
                result.merge(local)
    else:
        for item in pool:
            result.merge(worker(item))
    return result


def run_thm_1_1(seeds=200, max_n=14, max_d=5, jobs=1):
    return _pool_suite(check_thm_1_1_graph, "thm-1-1", seeds, max_n, max_d, jobs)


def run_thm_2_5(seeds=200, max_n=14, max_d=5, jobs=1):
    return _pool_suite(check_thm_2_5_graph, "thm-2-5", seeds, max_n, max_d, jobs)


def run_thm_2_10(seeds=200, max_n=14, max_d=5, jobs=1):
    return _pool_suite(check_thm_2_10_graph, "thm-2-10", seeds, max_n, max_d, jobs)


def run_remark_4_4(seeds=200, max_n=14, max_d=5, jobs=1):
    return _pool_suite(check_remark_4_4_graph, "remark-4-4", seeds, max_n, max_d, jobs)


def run_thm_4_6(seeds=200, max_n=14, max_d=5, jobs=1):
    return _pool_suite(check_thm_4_6_graph, "thm-4-6", seeds, max_n, max_d, jobs)


def run_thm_1_2(seeds=200, max_n=14, max_d=5, jobs=1):
    return _pool_suite(check_thm_1_2_graph, "thm-1-2", seeds, max_n, max_d, jobs)


def _flat_factors():
    return [
        ("C4", atlas.cycle(4)),
        ("Q3", atlas.hypercube(3)),
        ("K44", atlas.complete_bipartite(4, 4)),
    ]


def run_thm_5_2(seeds=0, max_n=0, max_d=0, jobs=1):
    """Composed product certificates verify for all kinds and flavors."""
    result = SuiteResult(suite="thm-5-2")
    factors = _flat_factors()
    for i, (name_g, g) in enumerate(factors):
        for name_h, h in factors[i:]:
            for kind in ("cartesian", "tensor", "strong"):
                for flavor in ("plain", "R", "S", "RS"):
                    report = check_flatness_preservation(
                        g, h, kind, 0, 0, flavor, run_search=False
                    )
                    result.checks += 1
                    if not report.constructed_valid:
                        _violate(
                            result, g, f"{name_g}x{name_h}",
                            f"{kind}/{flavor}: composed certificate invalid: "
                            f"{report.violations}",
                        )
    # Independent search cross-check where the product degree is small.
    for name_g, gname_h, kind, flavor in (
        ("C4", "C4", "cartesian", "RS"),
        ("C4", "C4", "tensor", "RS"),
        ("C4", "C4", "strong", "RS"),
        ("C4", "Q3", "cartesian", "plain"),
    ):
        g = dict(_flat_factors())[name_g]
        h = dict(_flat_factors())[gname_h]
        report = check_flatness_preservation(g, h, kind, 0, 0, flavor,
                                             run_search=True)
        result.checks += 1
        if report.search_verdict is None or not report.search_verdict.found:
            _violate(result, g, f"{name_g}x{gname_h}",
                     f"{kind}/{flavor}: product search found no certificate")
    return result


def run_thm_5_3(seeds=0, max_n=0, max_d=0, jobs=1):
    """Exact lower bounds on horizontal/vertical strong-product edges."""
    result = SuiteResult(suite="thm-5-3")
    pairs = [
        ("K2", atlas.complete(2), "K2", atlas.complete(2)),
        ("C4", atlas.cycle(4), "C4", atlas.cycle(4)),
        ("Q3", atlas.hypercube(3), "C4", atlas.cycle(4)),
        ("K3", atlas.complete(3), "K3", atlas.complete(3)),
        ("triplex", atlas.triplex(), "C4", atlas.cycle(4)),
    ]
    for name_g, g, name_h, h in pairs:
        samples = []
        g_edges = list(g.edges())[:2]
        h_edges = list(h.edges())[:2]
        for edge in g_edges:
            for other in range(min(2, h.n)):
                samples.append(("horizontal", edge, other))
        for edge in h_edges:
            for other in range(min(2, g.n)):
                samples.append(("vertical", edge, other))
        for row in check_strong_bounds(g, h, samples):
            result.checks += 1
            if not row.holds:
                _violate(result, g, f"{name_g}x{name_h}",
                         f"{row.orientation} {row.notion} edge {row.edge}: "
                         f"{row.product_value} < {row.lower_bound}")
        for row in diagonal_kappa_report(g, h, limit=3):
            result.notes.append(
                f"{name_g} strong {name_h} diagonal edge {row['edge']}: "
                f"kappa_0={row['kappa_0']} kappa_LLY={row['kappa_LLY']}"
            )
    return result


def run_cor_5_4(seeds=0, max_n=0, max_d=0, jobs=1):
    """Non-negative factors give non-negative horizontal/vertical edges."""
    result = SuiteResult(suite="cor-5-4")
    pairs = [
        ("Q3", atlas.hypercube(3), "C4", atlas.cycle(4)),
        ("C4", atlas.cycle(4), "C6", atlas.cycle(6)),
    ]
    for name_g, g, name_h, h in pairs:
        for factor in (g, h):
            for x, y in factor.edges():
                if transport.kappa_p(factor, x, y, 0) < 0:
                    raise ValueError("corollary pool needs non-negative factors")
        prod = product(g, h, "strong")
        for u, v in prod.graph.edges():
            if classify_edge(prod, u, v) == "diagonal":
                continue
            result.checks += 1
            if (transport.kappa_p(prod.graph, u, v, 0) < 0
                    or transport.kappa_lly(prod.graph, u, v) < 0):
                _violate(result, prod.graph, f"{name_g}x{name_h}",
                         f"edge ({u},{v}): negative curvature on "
                         f"{classify_edge(prod, u, v)} edge")
    return result


def run_cartesian_be(seeds=0, max_n=0, max_d=0, jobs=1):
    """Min formula for Bakry-Emery curvature on Cartesian products."""
    result = SuiteResult(suite="cartesian-be")
    pairs = [
        ("K2", atlas.complete(2), "K2", atlas.complete(2)),
        ("K2", atlas.complete(2), "C4", atlas.cycle(4)),
        ("C4", atlas.cycle(4), "C4", atlas.cycle(4)),
        ("K2", atlas.complete(2), "Q3", atlas.hypercube(3)),
        ("Q3", atlas.hypercube(3), "C4", atlas.cycle(4)),
        ("C6", atlas.cycle(6), "C6", atlas.cycle(6)),
        ("K3", atlas.complete(3), "K3", atlas.complete(3)),
        ("C5", atlas.cycle(5), "C5", atlas.cycle(5)),
        ("triplex", atlas.triplex(), "C4", atlas.cycle(4)),
        ("triplex", atlas.triplex(), "triplex", atlas.triplex()),
        ("K33", atlas.complete_bipartite(3, 3), "Q3", atlas.hypercube(3)),
    ]
    for name_g, g, name_h, h in pairs:
        for row in check_cartesian_be(g, h, samples=[(0, 0)]):
            result.checks += 1
            if not row.agree:
                _violate(result, g, f"{name_g}x{name_h}",
                         f"vertex {row.vertex}: min formula "
                         f"{row.expected} != {row.computed}")
    return result


def girth4_distance_regular_pool():
    pool = [(f"Q{d}", atlas.hypercube(d)) for d in range(2, 6)]
    pool += [(f"K{d}{d}", atlas.complete_bipartite(d, d)) for d in range(2, 7)]
    pool.append(("incidence_11_6_3", atlas.incidence_11_6_3()))
    return pool


def run_thm_6_2(seeds=0, max_n=0, max_d=0, jobs=1):
    """Distance-regular girth-4 graphs attain all extremal curvatures."""
    result = SuiteResult(suite="thm-6-2")
    for name, g in girth4_distance_regular_pool():
        d = g.is_regular()
        array = intersection_array(g)
        result.checks += 1
        if not isinstance(array, IntersectionArray):
            _violate(result, g, name, f"not distance-regular: {array}")
            continue
        result.checks += 1
        if girth(g) != 4:
            _violate(result, g, name, f"girth {girth(g)} != 4")
            continue
        for x, y in g.edges():
            result.checks += 1
            if (transport.kappa_p(g, x, y, 0) != 0
                    or transport.kappa_lly(g, x, y) != Fraction(2, d)):
                _violate(result, g, name, f"edge ({x},{y}) not extremal")
        for x in range(g.n):
            result.checks += 1
            if abs(bakry_emery.curvature(g, x).value - 2) > BE_VALUE_TOL:
                _violate(result, g, name, f"vertex {x}: K_inf != 2")
    return result


def run_appendix_kdd(seeds=0, max_n=0, max_d=0, jobs=1):
    """Closed-form complete-bipartite certificates, and the even/odd
    dichotomy for the reflexive-symmetric flavor."""
    result = SuiteResult(suite="appendix-kdd")
    for d in range(2, 11):
        g = atlas.complete_bipartite(d, d)
        for flavor in ("R", "S"):
            result.checks += 1
            check = verify_certificate(g, 0, kdd_matrix(d, flavor), flavor)
            if not check.valid:
                _violate(result, g, f"K{d}{d}",
                         f"{flavor} construction invalid: {check.violations}")
        result.checks += 1
        if d % 2 == 0:
            check = verify_certificate(g, 0, kdd_matrix(d, "RS"), "RS")
            if not check.valid:
                _violate(result, g, f"K{d}{d}",
                         f"RS construction invalid: {check.violations}")
        else:
            try:
                kdd_matrix(d, "RS")
            except ValueError:
                pass
            else:
                _violate(result, g, f"K{d}{d}",
                         "RS construction should be rejected for odd d")
    for d in range(2, 8):
        g = atlas.complete_bipartite(d, d)
        verdict = search_flatness(g, 0, "RS")
        result.checks += 1
        if verdict.found != (d % 2 == 0):
            _violate(result, g, f"K{d}{d}",
                     f"RS search found={verdict.found}, expected {d % 2 == 0}")
    return result


SUITES = {
    "thm-1-1": run_thm_1_1,
    "thm-2-5": run_thm_2_5,
    "thm-2-10": run_thm_2_10,
    "remark-4-4": run_remark_4_4,
    "thm-4-6": run_thm_4_6,
    "thm-1-2": run_thm_1_2,
    "thm-5-2": run_thm_5_2,
    "thm-5-3": run_thm_5_3,
    "cor-5-4": run_cor_5_4,
    "cartesian-be": run_cartesian_be,
    "thm-6-2": run_thm_6_2,
    "appendix-kdd": run_appendix_kdd,
}


def run_suite(name: str, seeds: int = 200, max_n: int = 14, max_d: int = 5,
              jobs: int = 1) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](seeds=seeds, max_n=max_n, max_d=max_d, jobs=jobs)
