"""Ricci-flatness certificates and their exhaustive search.

A flatness certificate at a center x of local degree d is a d x d matrix
of vertices: row i describes a map that sends x to its i-th neighbor and
each neighbor v_j to the entry A[i][j].  Validity means every entry is
adjacent to its column's neighbor, rows are injective inside the row
neighbor's sphere, and columns never repeat; the R flavor pins the
diagonal to x and the S flavor forces the matrix to be symmetric.

The search is complete backtracking with forward checking, a global
occurrence-count bound (each vertex z can appear exactly as often as it
has neighbors among the center's neighbors) and, for symmetric flavors, a
parity cut once the diagonal is fixed.  Exhaustion verdicts therefore
carry full proof force and report search statistics for auditability.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .graph import Graph, GraphError, sphere

FLAVORS = ("plain", "R", "S", "RS")


def _normalize_flavor(flavor: str) -> str:
    key = {"plain": "plain", "r": "R", "s": "S", "rs": "RS"}.get(
        str(flavor).lower()
    )
    if key is None:
        raise ValueError(f"unknown flavor {flavor!r}; expected one of {FLAVORS}")
    return key


@dataclass(frozen=True)
class AssignmentMatrix:
    """Flatness certificate: entries[i][j] is the image of neighbor j
    under the map associated with neighbor i."""

    center: int
    neighbors: tuple[int, ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def degree(self) -> int:
        return len(self.neighbors)

    def __str__(self):
        rows = [" ".join(f"{v:>3}" for v in row) for row in self.entries]
        return "\n".join(rows)


@dataclass(frozen=True)
class CertificateCheck:
    valid: bool
    violations: tuple


@dataclass(frozen=True)
class FlatnessVerdict:
    """Search outcome: a verified certificate, or proof of exhaustion."""

    flavor: str
    certificate: AssignmentMatrix | None
    nodes_expanded: int
    max_depth: int

    @property
    def found(self) -> bool:
        return self.certificate is not None


def _local_degree(g: Graph, x: int) -> int:
    """Common degree of x and all its neighbors.

    Flatness at x only reads the incomplete 2-ball, so transcribed local
    balls qualify as long as the 1-ball is regular.
    """
    d = g.degree(x)
    for v in g.adj[x]:
        if g.degree(v) != d:
            raise GraphError(
                f"flatness at {x} needs degree {d} on all of its 1-ball; "
                f"vertex {v} has degree {g.degree(v)}"
            )
    return d


def candidate_domains(g: Graph, x: int):
    """Per-cell candidate sets: common neighbors of the two spanning
    neighbors (the full neighbor sphere on the diagonal)."""
    nbrs = sorted(g.adj[x])
    sets = [set(g.adj[v]) for v in nbrs]
    return tuple(
        tuple(
            tuple(sorted(sets[i] if i == j else sets[i] & sets[j]))
            for j in range(len(nbrs))
        )
        for i in range(len(nbrs))
    )


def verify_certificate(g: Graph, x: int, matrix: AssignmentMatrix,
                       flavor: str = "plain") -> CertificateCheck:
    """Check all certificate conditions; violations are reported, not
    raised."""
    flavor = _normalize_flavor(flavor)
    violations = []
    d = g.degree(x)
    if matrix.center != x:
        violations.append((-1, -1, f"center {matrix.center} != {x}"))
    if set(matrix.neighbors) != set(g.adj[x]) or len(matrix.neighbors) != d:
        violations.append((-1, -1, "neighbor sequence is not the 1-sphere"))
    if len(matrix.entries) != d or any(len(r) != d for r in matrix.entries):
        violations.append((-1, -1, f"matrix is not {d}x{d}"))
        return CertificateCheck(valid=False, violations=tuple(violations))
    for i, v in enumerate(matrix.neighbors):
        if g.degree(v) != d:
            violations.append((i, -1, f"neighbor {v} has degree {g.degree(v)} != {d}"))
    nbr_sets = [set(g.adj[v]) for v in matrix.neighbors]
    for i in range(d):
        row = matrix.entries[i]
        if len(set(row)) != len(row):
            violations.append((i, -1, "row repeats an entry"))
        for j in range(d):
            entry = row[j]
            if entry not in nbr_sets[j]:
                violations.append((i, j, f"entry {entry} not adjacent to column neighbor"))
            if entry not in nbr_sets[i]:
                violations.append((i, j, f"entry {entry} outside row neighbor's sphere"))
    for j in range(d):
        column = [matrix.entries[i][j] for i in range(d)]
        if len(set(column)) != len(column):
            violations.append((-1, j, "column repeats an entry"))
    if flavor in ("R", "RS"):
        for i in range(d):
            if matrix.entries[i][i] != x:
                violations.append((i, i, "diagonal entry is not the center"))
    if flavor in ("S", "RS"):
        for i in range(d):
            for j in range(i + 1, d):
                if matrix.entries[i][j] != matrix.entries[j][i]:
                    violations.append((i, j, "matrix is not symmetric"))
    return CertificateCheck(valid=not violations, violations=tuple(violations))


def search_flatness(g: Graph, x: int, flavor: str = "plain",
                    cap: int = 12) -> FlatnessVerdict:
    """Complete backtracking search for a flatness certificate at ``x``.

    Deterministic: most-constrained cell first with (row, column) order as
    tie-break, candidate values in ascending vertex order.  Returns the
    first certificate found, or an exhaustion verdict with statistics.
    """
    flavor = _normalize_flavor(flavor)
    d = _local_degree(g, x)
    if d > cap:
        raise GraphError(f"degree {d} exceeds the search cap {cap}")
    nbrs = tuple(sorted(g.adj[x]))
    nbr_sets = [set(g.adj[v]) for v in nbrs]
    domains = [
        [
            frozenset(nbr_sets[i]) if i == j else frozenset(nbr_sets[i] & nbr_sets[j])
            for j in range(d)
        ]
        for i in range(d)
    ]
    universe = set().union(*(dom for row in domains for dom in row))
    s1 = set(nbrs)
    required = {z: len(set(g.adj[z]) & s1) for z in universe}

    symmetric = flavor in ("S", "RS")
    reflexive = flavor in ("R", "RS")

    assign = [[None] * d for _ in range(d)]
    row_used = [set() for _ in range(d)]
    col_used = [set() for _ in range(d)]
    count = {z: 0 for z in universe}
    if symmetric:
        cells = [(i, j) for i in range(d) for j in range(i, d)]
    else:
        cells = [(i, j) for i in range(d) for j in range(d)]
    stats = {"nodes": 0, "depth": 0}

    def place(i, j, z):
        assign[i][j] = z
        row_used[i].add(z)
        col_used[j].add(z)
        count[z] += 1
        if symmetric and i != j:
            assign[j][i] = z
            row_used[j].add(z)
            col_used[i].add(z)
            count[z] += 1

    def remove(i, j, z):
        assign[i][j] = None
        row_used[i].discard(z)
        col_used[j].discard(z)
        count[z] -= 1
        if symmetric and i != j:
            assign[j][i] = None
            row_used[j].discard(z)
            col_used[i].discard(z)
            count[z] -= 1

    if reflexive:
        for i in range(d):
            place(i, i, x)
        pending = [c for c in cells if c[0] != c[1]]
    else:
        pending = list(cells)

    def options(i, j):
        step = 2 if symmetric and i != j else 1
        base = domains[i][j] - row_used[i] - col_used[j]
        if symmetric and i != j:
            base = base - row_used[j] - col_used[i]
        return sorted(z for z in base if count[z] + step <= required[z])

    def parity_blocked():
        # Once the diagonal is fixed, symmetric completions add mass in
        # pairs, so every remaining occurrence budget must be even.
        if not symmetric:
            return False
        if any(assign[i][i] is None for i in range(d)):
            return False
        return any((required[z] - count[z]) % 2 for z in count)

    def extend(remaining, depth):
        stats["depth"] = max(stats["depth"], depth)
        if not remaining:
            return True
        if parity_blocked():
            return False
        best_idx = None
        best_opts = None
        for idx, (i, j) in enumerate(remaining):
            opts = options(i, j)
            if best_opts is None or len(opts) < len(best_opts):
                best_idx, best_opts = idx, opts
                if not opts:
                    return False
        i, j = remaining[best_idx]
        rest = remaining[:best_idx] + remaining[best_idx + 1:]
        for z in best_opts:
            stats["nodes"] += 1
            place(i, j, z)
            if extend(rest, depth + 1):
                return True
            remove(i, j, z)
        return False

    found = extend(pending, 0)
    certificate = None
    if found:
        certificate = AssignmentMatrix(
            center=x,
            neighbors=nbrs,
            entries=tuple(tuple(row) for row in assign),
        )
        check = verify_certificate(g, x, certificate, flavor)
        if not check.valid:
            raise RuntimeError(
                f"internal error: search produced an invalid certificate: "
                f"{check.violations}"
            )
    return FlatnessVerdict(
        flavor=flavor,
        certificate=certificate,
        nodes_expanded=stats["nodes"],
        max_depth=stats["depth"],
    )


# -- serialization ------------------------------------------------------------


def ball_labels(g: Graph, x: int, neighbors) -> dict:
    """Vertex -> small-integer labeling of the 2-ball: 0 for the center,
    1..d for the neighbor order, then the sorted 2-sphere."""
    order = [x, *neighbors, *sphere(g, x, 2)]
    return {v: i for i, v in enumerate(order)}


def certificate_to_json(g: Graph, matrix: AssignmentMatrix) -> str:
    labels = ball_labels(g, matrix.center, matrix.neighbors)
    return json.dumps(
        {
            "center": matrix.center,
            "neighbors": list(matrix.neighbors),
            "entries": [[labels[v] for v in row] for row in matrix.entries],
        }
    )


def certificate_from_json(g: Graph, payload: str) -> AssignmentMatrix:
    data = json.loads(payload)
    center = data["center"]
    neighbors = tuple(data["neighbors"])
    labels = ball_labels(g, center, neighbors)
    unlabel = {i: v for v, i in labels.items()}
    entries = tuple(
        tuple(unlabel[i] for i in row) for row in data["entries"]
    )
    return AssignmentMatrix(center=center, neighbors=neighbors, entries=entries)


def matrix_from_labels(g: Graph, x: int, rows, neighbors=None) -> AssignmentMatrix:
    """Build a certificate from small-integer labels (0 = center, 1..d =
    neighbor order, then the sorted 2-sphere)."""
    neighbors = tuple(neighbors) if neighbors is not None else tuple(sorted(g.adj[x]))
    labels = ball_labels(g, x, neighbors)
    unlabel = {i: v for v, i in labels.items()}
    entries = tuple(tuple(unlabel[i] for i in row) for row in rows)
    return AssignmentMatrix(center=x, neighbors=neighbors, entries=entries)


# -- complete bipartite constructions ----------------------------------------


def kdd_matrix(d: int, flavor: str) -> AssignmentMatrix:
    """Closed-form certificates for one side's vertex 0 of K_{d,d}.

    R: rows are right-shifts of 0..d-1 (zero diagonal).  S: rows are left
    shifts (symmetric).  RS: a symmetric zero-diagonal pattern that exists
    exactly for even d; odd d is rejected (a symmetric matrix over an odd
    number of occurrences of each value must use the diagonal).
    """
    flavor = _normalize_flavor(flavor)
    if d < 2:
        raise ValueError("need d >= 2")
    if flavor == "plain":
        raise ValueError("pick one of the structured flavors: R, S or RS")
    if flavor == "R":
        rows = [[(j - i) % d for j in range(d)] for i in range(d)]
    elif flavor == "S":
        rows = [[(i + j) % d for j in range(d)] for i in range(d)]
    else:
        if d % 2 != 0:
            raise ValueError("K_{d,d} has an RS certificate only for even d")
        n = d // 2
        rows = [[0] * d for _ in range(d)]
        for i in range(1, d + 1):  # 1-indexed construction
            for j in range(1, d + 1):
                if i == j:
                    value = 0
                elif d in (i, j):
                    small = min(i, j)
                    if small == 1:
                        value = d - 1
                    elif small <= n:
                        value = 2 * (small - 1)
                    else:
                        value = 2 * (small - n) - 1
                elif i + j <= 2 * n + 1:
                    value = i + j - 2
                else:
                    value = i + j - 2 * n - 1
                rows[i - 1][j - 1] = value
    # In K_{d,d} with center 0, the label of the center is vertex 0 and the
    # 2-sphere labels 1..d-1 are the vertices 1..d-1, so labels are ids.
    neighbors = tuple(range(d, 2 * d))
    return AssignmentMatrix(
        center=0,
        neighbors=neighbors,
        entries=tuple(tuple(row) for row in rows),
    )
