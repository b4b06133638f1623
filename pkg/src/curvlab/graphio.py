"""Graph file formats and report emitters.

Two input formats are accepted: a plain edge-list text format (first line
"n m", then m lines "u v") and a JSON object {"n": ..., "edges": [[u,v],
...], "labels": [...]}.  Both reject invariant violations with
line-numbered errors.  Report emitters render rows of exact fractions to
JSON or CSV.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .graph import Graph, GraphError, build_graph, connected_component


class GraphParseError(GraphError):
    """Input file violates the format or the graph invariants."""


def parse_edgelist(text: str) -> Graph:
    lines = text.splitlines()
    rows = [
        (number, line.strip())
        for number, line in enumerate(lines, start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not rows:
        raise GraphParseError("empty edge-list input")
    header_no, header = rows[0]
    parts = header.split()
    if len(parts) != 2:
        raise GraphParseError(f"line {header_no}: expected 'n m' header")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphParseError(f"line {header_no}: expected integers 'n m'") from None
    body = rows[1:]
    if len(body) != m:
        raise GraphParseError(
            f"expected {m} edge lines after the header, found {len(body)}"
        )
    edges = []
    for number, line in body:
        parts = line.split()
        if len(parts) != 2:
            raise GraphParseError(f"line {number}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"line {number}: expected integers 'u v'") from None
        edges.append((number, u, v))
    try:
        return build_graph(n, [(u, v) for _, u, v in edges])
    except GraphError as exc:
        # Re-raise with the first offending line when one is identifiable.
        for number, u, v in edges:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise GraphParseError(f"line {number}: {exc}") from None
        raise GraphParseError(str(exc)) from None


def emit_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count()}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_graph_json(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphParseError(f"line {exc.lineno}: invalid JSON: {exc.msg}") from None
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise GraphParseError('JSON graph needs keys "n" and "edges"')
    edges = [tuple(edge) for edge in data["edges"]]
    if any(len(edge) != 2 for edge in edges):
        raise GraphParseError("every edge must be a pair [u, v]")
    try:
        return build_graph(int(data["n"]), edges, labels=data.get("labels"))
    except GraphError as exc:
        raise GraphParseError(str(exc)) from None


def emit_graph_json(g: Graph) -> str:
    payload: dict = {"n": g.n, "edges": [list(edge) for edge in g.edges()]}
    if g.labels is not None:
        payload["labels"] = list(g.labels)
    return json.dumps(payload)


def load_graph(path: str, component_root: int | None = None) -> Graph:
    """Read a graph file, sniffing JSON versus edge-list by content.

    ``component_root`` opts into keeping only that vertex's component when
    the input is disconnected.
    """
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    parser = parse_graph_json if text.lstrip().startswith("{") else parse_edgelist
    try:
        return parser(text)
    except GraphParseError as exc:
        if component_root is not None and "not connected" in str(exc):
            data = (
                json.loads(text)
                if text.lstrip().startswith("{")
                else _edgelist_payload(text)
            )
            graph, _ = connected_component(
                int(data["n"]),
                [tuple(edge) for edge in data["edges"]],
                component_root,
            )
            return graph
        raise


def _edgelist_payload(text: str) -> dict:
    rows = [
        line.strip()
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]
    n, _ = (int(part) for part in rows[0].split())
    edges = [[int(a) for a in row.split()] for row in rows[1:]]
    return {"n": n, "edges": edges}


# -- report rendering ---------------------------------------------------------


def fraction_fields(value: Fraction) -> dict:
    return {"exact": str(value), "decimal": float(value)}


def render_report(rows: list[dict], fmt: str = "json") -> str:
    """Render report rows to JSON (list of objects) or CSV.

    Fractions are expanded into exact "num/den" strings plus a decimal
    rendering; all other values pass through unchanged.
    """
    flat_rows = []
    for row in rows:
        flat: dict = {}
        for key, value in row.items():
            if isinstance(value, Fraction):
                flat[key] = str(value)
                flat[key + "_decimal"] = float(value)
            elif isinstance(value, tuple):
                flat[key] = list(value)
            else:
                flat[key] = value
        flat_rows.append(flat)
    if fmt == "json":
        return json.dumps(flat_rows, indent=2)
    if fmt == "csv":
        if not flat_rows:
            return ""
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=list(flat_rows[0]))
        writer.writeheader()
        for flat in flat_rows:
            writer.writerow(
                {
                    key: json.dumps(value) if isinstance(value, list) else value
                    for key, value in flat.items()
                }
            )
        return buffer.getvalue()
    raise ValueError(f"unknown report format {fmt!r}")
