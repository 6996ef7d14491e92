"""Command-line front end.

Exit status: 0 ok, 1 invariant failure, 2 bad or degenerate input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from decimal import Decimal
from pathlib import Path

from .chroma import (
    ChromaticCode,
    as_code,
    is_valid_particle_code,
    chrom_dist,
    code_dist,
    format_code,
    format_components,
    format_half,
)
from .diagram import FullOACD, build_diagram, parse_geom_id
from .exact_geom import GeneratorSet, Point2, validate_general_position
from .exceptions import DegenerateInput, InputError, InvariantViolation, OACDError
from .render import render_svg
from .topo import CDN_READINGS, amatrix, conn, cscs_relation, imatrix, relate, rmatrix
from .verify import hidden_particles, run_suite, verify_diagram

EXIT_OK, EXIT_INVARIANT, EXIT_INPUT = 0, 1, 2


# -- input --------------------------------------------------------------------------

def read_points(text: str, fmt: str) -> list[Point2]:
    """Parse CSV ``x,y`` lines or a JSON ``[[x, y], ...]`` array."""
    if fmt == "json":
        try:
            rows = json.loads(text, parse_float=Decimal)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad JSON points: {exc}") from exc
        if not isinstance(rows, list):
            raise InputError("JSON points must be an array of [x, y] pairs")
    elif fmt == "csv":
        rows = []
        for row in csv.reader(io.StringIO(text)):
            cells = [c.strip() for c in row]
            if not cells or not any(cells) or cells[0].startswith("#"):
                continue
            rows.append(cells)
        if rows and rows[0] and rows[0][0].lower() in ("x", "px"):
            rows = rows[1:]
    else:
        raise InputError(f"unknown point format {fmt!r}")
    out = []
    for r in rows:
        if not isinstance(r, (list, tuple)) or len(r) != 2:
            raise InputError(f"point {r!r} does not have two coordinates")
        out.append(Point2.of(*r))
    return out


def _guess_format(path: str | None, explicit: str | None) -> str:
    if explicit:
        return explicit
    if path and path.lower().endswith(".json"):
        return "json"
    return "csv"


def load_points(args) -> list[Point2]:
    if args.input in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            text = Path(args.input).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {args.input}: {exc}") from exc
    return read_points(text, _guess_format(args.input, args.format))


def load_diagram(args) -> FullOACD:
    points = load_points(args)
    report = validate_general_position(points)
    if report:
        raise DegenerateInput(report)
    return build_diagram(GeneratorSet(points))


# -- output helpers -----------------------------------------------------------------

def _q(v) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _table(rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _geometry(d: FullOACD, gid: str) -> dict:
    kind, idx = parse_geom_id(gid)
    arr = d.arrangement
    if kind == "vertex":
        p = arr.vertices[idx].location
        return {"point": [_q(p.x), _q(p.y)]}
    if kind == "edge":
        e = arr.edges[idx]
        return {"bisector": list(d.bisectors[e.carrier].pair), "bounded": e.bounded,
                "vertices": [None if v is None else f"v{v}" for v in e.endpoints]}
    f = arr.faces[idx]
    return {"bounded": f.bounded, "edges": len(f.boundary)}


def particle_records(d: FullOACD) -> list[dict]:
    out = []
    for p in d.particles:
        out.append({
            "kind": p.kind.value,
            "compact": format_code(p.code),
            "code": list(p.code),
            "components": format_components(p.code),
            "geom_id": p.geom,
            "geometry": _geometry(d, p.geom),
        })
    return out


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# -- commands -----------------------------------------------------------------------

def cmd_build(args) -> int:
    d = load_diagram(args)
    records = particle_records(d)
    if args.out == "table":
        rows = [["geom", "kind", "code", "components"]]
        rows += [[r["geom_id"], r["kind"], r["compact"], r["components"]] for r in records]
        _emit(args, _table(rows))
    elif args.out == "svg":
        _emit(args, render_svg(d, args.bbox))
    else:
        doc = {"n": d.n, "counts": d.arrangement.counts(), "particles": records}
        _emit(args, json.dumps(doc, indent=2))
    return EXIT_OK


def query_code(text: str, units: str = "auto") -> ChromaticCode:
    """Parse a code given on the command line.

    Compact strings are doubled by default. With ``units="auto"`` a string
    that is not a valid doubled code but is one once doubled (``"012"``) is
    read in natural units; no string can be valid both ways because the
    component sums differ by a factor of two.
    """
    code = as_code(text)
    if units == "natural":
        return ChromaticCode(2 * v for v in code)
    if units == "auto" and not is_valid_particle_code(code):
        doubled = ChromaticCode(2 * v for v in code)
        if is_valid_particle_code(doubled):
            return doubled
    return code


def cmd_query(args) -> int:
    a, b = query_code(args.code_a, args.units), query_code(args.code_b, args.units)
    d = load_diagram(args) if args.input else None
    verdict = relate(a, b, d)
    doc = verdict.to_dict()
    doc["delta"] = format_half(chrom_dist(a, b))
    doc["gamma"] = code_dist(a, b)
    kind = verdict.details.get("vertex_kind")
    if args.out == "table":
        label = verdict.relation.value
        if kind is not None:
            label += f" ({kind.value})"
        lines = [f"relation  {label}", f"delta     {doc['delta']}", f"gamma     {doc['gamma']}"]
        for k, code in enumerate(doc["evidence"]):
            flag = ""
            if doc["realized"] is not None:
                flag = "  realized" if doc["realized"][k] else "  hidden"
            lines.append(f"evidence  {code}{flag}")
        _emit(args, "\n".join(lines))
    else:
        doc.pop("details", None)
        if kind is not None:
            doc["vertex_kind"] = kind.value
        _emit(args, json.dumps(doc, indent=2))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.input:
        d = load_diagram(args)
        report = verify_diagram(d, topology=True, seed=args.seed)
        report.meta["hidden_particles"] = len(hidden_particles(d))
    else:
        report = run_suite(args.n_min, args.n_max, args.trials, args.seed,
                           topology_max_n=args.topology_max_n)
    if args.out == "table":
        _emit(args, report.table())
    else:
        _emit(args, report.to_json(timing=args.timing))
    return EXIT_OK if report.ok else EXIT_INVARIANT


def cmd_render(args) -> int:
    d = load_diagram(args)
    _emit(args, render_svg(d, args.bbox, edge_labels=args.edge_labels))
    return EXIT_OK


def _matrix_rows(m) -> list[list[str]]:
    return [[str(v) for v in row] for row in m]


def cmd_matrix(args) -> int:
    xi = [query_code(c, args.units) for c in args.codes]
    im = imatrix(xi)
    dist = [[format_half(int(v)) for v in row] for row in im.values]
    a = amatrix(xi).tolist()
    r = rmatrix(xi).tolist()
    c = conn(xi)
    doc = {
        "cells": [format_code(x) for x in xi],
        "iM": dist,
        "aM": a,
        "rM": r,
        "connected": c.connected,
        "components": [[format_code(xi[i]) for i in comp] for comp in c.components],
    }
    if args.against:
        other = [query_code(x, args.units) for x in args.against]
        verdict = cscs_relation(xi, other, args.cdn_reading)
        doc["relation"] = verdict.to_dict()
    if args.out == "table":
        head = [""] + doc["cells"]
        parts = []
        for name, m in (("iM", dist), ("aM", _matrix_rows(a)), ("rM", _matrix_rows(r))):
            parts.append(name)
            parts.append(_table([head] + [[doc["cells"][i]] + row for i, row in enumerate(m)]))
        parts.append(f"connected: {str(c.connected).lower()}")
        if "relation" in doc:
            parts.append(f"relation: {doc['relation']['relation']}")
        _emit(args, "\n".join(parts))
    else:
        _emit(args, json.dumps(doc, indent=2))
    return EXIT_OK


def cmd_hidden(args) -> int:
    d = load_diagram(args)
    hidden = hidden_particles(d)
    if args.out == "table":
        rows = [["code", "kind", "provenance"]]
        rows += [[format_code(h.code), h.kind.value, ",".join(h.provenance)] for h in hidden]
        _emit(args, _table(rows) if hidden else "no hidden particles")
    else:
        _emit(args, json.dumps([h.to_dict() for h in hidden], indent=2))
    return EXIT_OK


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="points file (CSV x,y or JSON [[x,y],...]); - for stdin")
    common.add_argument("--format", choices=("csv", "json"), help="point format (default: by extension)")
    common.add_argument("--out", choices=("json", "table", "svg"), default="json")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--bbox", help="x0,y0,x1,y1 for SVG output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cdn-reading", choices=CDN_READINGS[:2], default="union")
    common.add_argument("--units", choices=("auto", "doubled", "natural"), default="auto",
                        help="how compact code strings are read (default: auto)")

    parser = argparse.ArgumentParser(prog="oacd", description="Full-coded chromatic diagrams of planar point sets.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="code every particle of a diagram")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("query", parents=[common], help="relation between two particle codes")
    p.add_argument("code_a")
    p.add_argument("code_b")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("verify", parents=[common], help="run the verification suite")
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--topology-max-n", type=int, default=7)
    p.add_argument("--timing", action="store_true", help="include per-check timings in JSON")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", parents=[common], help="draw the diagram as SVG")
    p.add_argument("--edge-labels", action="store_true")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("matrix", parents=[common], help="distance, adjacency and reachability matrices")
    p.add_argument("codes", nargs="+", help="cell codes of the cluster")
    p.add_argument("--against", nargs="+", help="second cluster for the cluster relation")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("hidden", parents=[common], help="list hidden candidate codes")
    p.set_defaults(func=cmd_hidden)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DegenerateInput as exc:
        sys.stderr.write(f"error: {exc}\n")
        sys.stdout.write(json.dumps({"error": "degenerate input", "report": exc.report.to_dict()},
                                    indent=2) + "\n")
        return EXIT_INPUT
    except InvariantViolation as exc:
        sys.stderr.write(f"invariant violated: {exc}\n")
        return EXIT_INVARIANT
    except (InputError, OACDError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
