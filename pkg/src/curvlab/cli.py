"""Command-line front end.

Subcommands: ``curvature`` (per-edge or per-vertex reports), ``flatness``
(certificate search and verification), ``product`` (build graph products),
``verify`` (theorem suites over named and seeded random graphs) and
``atlas`` (list or emit the named graphs).  Exit codes: 0 success, 1 a
verification suite found a violation, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from . import atlas as atlas_mod
from . import bakry_emery, transport
from .flatness import certificate_to_json, search_flatness
from .graph import Graph, GraphError
from .graphio import (
    GraphParseError,
    emit_edgelist,
    emit_graph_json,
    load_graph,
    render_report,
)
from .products import product
from .verify import SUITES, run_suite

USAGE_ERROR = 2


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _parse_dim(text: str) -> float:
    if text.lower() in ("inf", "infinity"):
        return math.inf
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("dimension must be positive or 'inf'")
    return value


def _load(path: str, args) -> Graph:
    root = getattr(args, "root", None)
    if getattr(args, "allow_components", False) and root is None:
        root = 0
    return load_graph(path, component_root=root)


def _edge_filter(g: Graph, spec: str | None):
    edges = list(g.edges())
    if spec is None:
        return edges
    wanted = []
    for chunk in spec.split(","):
        u, v = (int(part) for part in chunk.split("-"))
        if not g.has_edge(u, v):
            raise GraphError(f"({u},{v}) is not an edge")
        wanted.append((min(u, v), max(u, v)))
    return wanted


def _vertex_filter(g: Graph, spec: str | None):
    if spec is None:
        return list(range(g.n))
    return [int(chunk) for chunk in spec.split(",")]


def cmd_curvature(args) -> int:
    g = _load(args.graph, args)
    fmt = "csv" if args.csv else args.format
    rows = []
    if args.notion == "bakry-emery":
        for x in _vertex_filter(g, args.vertices):
            sample = bakry_emery.curvature(g, x, args.dim)
            row = {
                "vertex": x,
                "label": g.label_of(x),
                "dim": "inf" if args.dim == math.inf else args.dim,
                "k": sample.value,
                "tolerance": sample.tolerance,
            }
            if g.is_regular() is not None:
                row["upper_bound"] = bakry_emery.be_upper_bound(g, x)
            rows.append(row)
    else:
        for u, v in _edge_filter(g, args.edges):
            row = {"edge": (u, v), "labels": (g.label_of(u), g.label_of(v))}
            if args.notion == "ollivier":
                row["p"] = args.p
                row["kappa"] = transport.kappa_p(g, u, v, args.p)
            else:
                row["kappa_lly"] = transport.kappa_lly(g, u, v)
            rows.append(row)
    print(render_report(rows, fmt))
    return 0


def cmd_flatness(args) -> int:
    g = _load(args.graph, args)
    vertices = [args.vertex] if args.vertex is not None else list(range(g.n))
    fmt = "csv" if args.csv else args.format
    rows = []
    for x in vertices:
        verdict = search_flatness(g, x, args.flavor, cap=args.cap)
        row = {
            "vertex": x,
            "label": g.label_of(x),
            "flavor": verdict.flavor,
            "flat": verdict.found,
            "nodes_expanded": verdict.nodes_expanded,
        }
        if verdict.found:
            row["certificate"] = json.loads(
                certificate_to_json(g, verdict.certificate)
            )["entries"]
        rows.append(row)
    print(render_report(rows, fmt))
    return 0


def cmd_product(args) -> int:
    g = _load(args.graph_a, args)
    h = _load(args.graph_b, args)
    root = None
    if args.component_root:
        gi, hi = (int(part) for part in args.component_root.split(","))
        root = (gi, hi)
    prod = product(g, h, args.kind, component_root=root)
    text = (
        emit_graph_json(prod.graph)
        if args.format == "json"
        else emit_edgelist(prod.graph)
    )
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        print(text, end="" if text.endswith("\n") else "\n")
    return 0


def cmd_verify(args) -> int:
    result = run_suite(
        args.suite,
        seeds=args.seeds,
        max_n=args.max_n,
        max_d=args.max_d,
        jobs=args.jobs,
    )
    for note in result.notes:
        print(f"note: {note}")
    status = "PASS" if result.passed else "FAIL"
    print(f"{result.suite}: {status} ({result.checks} checks, "
          f"{len(result.violations)} violations)")
    if not result.passed:
        os.makedirs(args.reproducer_dir, exist_ok=True)
        for number, violation in enumerate(result.violations):
            path = os.path.join(
                args.reproducer_dir,
                f"reproducer-{result.suite}-{number}.json",
            )
            with open(path, "w", encoding="utf-8") as handle:
                json.dump(
                    {
                        "suite": violation.suite,
                        "graph_name": violation.graph_name,
                        "detail": violation.detail,
                        "edgelist": violation.reproducer["edgelist"],
                        "command": (
                            f"curvlab verify {args.suite} --seeds {args.seeds} "
                            f"--max-n {args.max_n} --max-d {args.max_d}"
                        ),
                    },
                    handle,
                    indent=2,
                )
            print(f"violation[{number}] {violation.graph_name}: "
                  f"{violation.detail}\n  reproducer: {path}")
        return 1
    return 0


def cmd_atlas(args) -> int:
    if args.atlas_command == "list":
        for name, (_, params) in sorted(atlas_mod.REGISTRY.items()):
            suffix = f" {' '.join(params)}" if params else ""
            print(f"{name}{suffix}")
        return 0
    params = [int(part) for part in args.params]
    try:
        g = atlas_mod.make(args.name, *params)
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    text = emit_graph_json(g) if args.format == "json" else emit_edgelist(g)
    print(text, end="" if text.endswith("\n") else "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvlab",
        description="Exact discrete curvature toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    curvature = sub.add_parser("curvature", help="per-edge/per-vertex curvature report")
    curvature.add_argument("graph")
    curvature.add_argument("--notion", choices=("ollivier", "lly", "bakry-emery"),
                           default="ollivier")
    curvature.add_argument("--p", type=_parse_fraction, default=Fraction(0),
                           help="idleness for the ollivier notion (rational)")
    curvature.add_argument("--dim", type=_parse_dim, default=math.inf,
                           help="dimension for bakry-emery ('inf' or positive)")
    curvature.add_argument("--edges", help="comma-separated list like 0-1,2-3")
    curvature.add_argument("--vertices", help="comma-separated vertex ids")
    curvature.add_argument("--format", choices=("json", "csv"), default="json")
    curvature.add_argument("--csv", action="store_true", help="shorthand for --format csv")
    curvature.add_argument("--allow-components", action="store_true")
    curvature.add_argument("--root", type=int, help="component root with --allow-components")
    curvature.set_defaults(func=cmd_curvature)

    flatness = sub.add_parser("flatness", help="search flatness certificates")
    flatness.add_argument("graph")
    flatness.add_argument("--flavor", choices=("plain", "R", "S", "RS"), default="plain")
    group = flatness.add_mutually_exclusive_group(required=True)
    group.add_argument("--vertex", type=int)
    group.add_argument("--all", action="store_true")
    flatness.add_argument("--cap", type=int, default=12, help="degree cap for the search")
    flatness.add_argument("--format", choices=("json", "csv"), default="json")
    flatness.add_argument("--csv", action="store_true")
    flatness.add_argument("--allow-components", action="store_true")
    flatness.add_argument("--root", type=int)
    flatness.set_defaults(func=cmd_flatness)

    prod = sub.add_parser("product", help="build a graph product")
    prod.add_argument("graph_a")
    prod.add_argument("graph_b")
    prod.add_argument("--kind", choices=("cartesian", "tensor", "strong"),
                      required=True)
    prod.add_argument("--component-root",
                      help="'i,j' factor coordinates whose component to keep")
    prod.add_argument("--format", choices=("edgelist", "json"), default="edgelist")
    prod.add_argument("-o", "--output", help="output file ('-' for stdout)")
    prod.set_defaults(func=cmd_product, allow_components=False, root=None)

    verify = sub.add_parser("verify", help="run a theorem verification suite")
    verify.add_argument("suite", choices=sorted(SUITES))
    verify.add_argument("--seeds", type=int, default=200)
    verify.add_argument("--max-n", type=int, default=14)
    verify.add_argument("--max-d", type=int, default=5)
    verify.add_argument("--jobs", type=int,
                        default=int(os.environ.get("CURVLAB_JOBS", "1")))
    verify.add_argument("--reproducer-dir", default=".")
    verify.set_defaults(func=cmd_verify)

    atlas = sub.add_parser("atlas", help="list or emit the named graphs")
    atlas_sub = atlas.add_subparsers(dest="atlas_command", required=True)
    atlas_list = atlas_sub.add_parser("list")
    atlas_list.set_defaults(func=cmd_atlas)
    atlas_emit = atlas_sub.add_parser("emit")
    atlas_emit.add_argument("name")
    atlas_emit.add_argument("params", nargs="*")
    atlas_emit.add_argument("--format", choices=("edgelist", "json"),
                            default="edgelist")
    atlas_emit.set_defaults(func=cmd_atlas)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphParseError, GraphError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
