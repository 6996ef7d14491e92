"""Static SVG drawing of a full-coded diagram inside a bounding box."""
from __future__ import annotations

import xml.etree.ElementTree as ET
from fractions import Fraction
from typing import Sequence

from .arrangement import VertexKind, representative_point
from .chroma import format_code
from .diagram import FullOACD
from .exact_geom import Point2, to_rational
from .exceptions import BboxTooSmall, InputError

Box = tuple[Fraction, Fraction, Fraction, Fraction]
Polygon = list[tuple[Fraction, Fraction]]


def parse_bbox(text: str | Sequence) -> Box:
    parts = text.split(",") if isinstance(text, str) else list(text)
    if len(parts) != 4:
        raise InputError(f"bbox needs x0,y0,x1,y1, got {text!r}")
    x0, y0, x1, y1 = (to_rational(p) for p in parts)
    if not (x0 < x1 and y0 < y1):
        raise InputError(f"empty bbox {text!r}")
    return x0, y0, x1, y1


def default_bbox(d: FullOACD, margin: Fraction = Fraction(1, 2)) -> Box:
    """Box around generators and vertices, padded by ``margin`` of its size."""
    pts = list(d.generators) + [v.location for v in d.arrangement.vertices]
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    w = max(max(xs) - min(xs), max(ys) - min(ys), Fraction(1))
    pad = w * margin
    return min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad


def _strictly_inside(p: Point2, box: Box) -> bool:
    x0, y0, x1, y1 = box
    return x0 < p.x < x1 and y0 < p.y < y1


def _clip(poly: Polygon, a: int, b: int, c: int, sign: int) -> Polygon:
    """Sutherland-Hodgman against ``sign * (a x + b y + c) >= 0``."""
    out: Polygon = []
    if not poly:
        return out
    val = [sign * (a * x + b * y + c) for x, y in poly]
    for k in range(len(poly)):
        p, q = poly[k], poly[(k + 1) % len(poly)]
        vp, vq = val[k], val[(k + 1) % len(poly)]
        if vp >= 0:
            out.append(p)
        if (vp > 0 > vq) or (vp < 0 < vq):
            t = vp / (vp - vq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _area2(poly: Polygon) -> Fraction:
    return sum(
        (poly[k][0] * poly[(k + 1) % len(poly)][1] - poly[(k + 1) % len(poly)][0] * poly[k][1]
         for k in range(len(poly))),
        Fraction(0),
    )


def _centroid(poly: Polygon) -> tuple[Fraction, Fraction]:
    a = _area2(poly)
    cx = cy = Fraction(0)
    for k in range(len(poly)):
        (x0, y0), (x1, y1) = poly[k], poly[(k + 1) % len(poly)]
        cross = x0 * y1 - x1 * y0
        cx += (x0 + x1) * cross
        cy += (y0 + y1) * cross
    return cx / (3 * a), cy / (3 * a)


def cell_polygon(d: FullOACD, face: int, box: Box) -> Polygon:
    """The part of ``face`` inside ``box``, exact; empty if they miss."""
    x0, y0, x1, y1 = box
    poly: Polygon = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
    # face signs are never zero
    for b, s in zip(d.bisectors, d.arrangement.face_signs[face]):
        poly = _clip(poly, b.a, b.b, b.c, s)
    return poly if len(poly) >= 3 and _area2(poly) != 0 else []


def clip_line(a: int, b: int, c: int, box: Box) -> tuple[tuple, tuple] | None:
    x0, y0, x1, y1 = box
    hits = set()
    if b:
        for x in (x0, x1):
            y = Fraction(-(a * x + c), b)
            if y0 <= y <= y1:
                hits.add((x, y))
    if a:
        for y in (y0, y1):
            x = Fraction(-(b * y + c), a)
            if x0 <= x <= x1:
                hits.add((x, y))
    if len(hits) < 2:
        return None
    ordered = sorted(hits)
    return ordered[0], ordered[-1]


class _Frame:
    def __init__(self, box: Box, width: int):
        x0, y0, x1, y1 = box
        self.box = box
        self.scale = Fraction(width) / (x1 - x0)
        self.width = width
        self.height = int(round((y1 - y0) * self.scale))

    def __call__(self, x, y) -> tuple[str, str]:
        x0, _, _, y1 = self.box
        return f"{float((x - x0) * self.scale):.3f}", f"{float((y1 - y) * self.scale):.3f}"


def render_svg(d: FullOACD, bbox: Box | str | None = None, width: int = 800,
               edge_labels: bool = False) -> str:
    """Draw cells (labelled), clipped bisectors, vertices and generators."""
    box = default_bbox(d) if bbox is None else (
        parse_bbox(bbox) if isinstance(bbox, str) else tuple(to_rational(v) for v in bbox)
    )
    outside = [i for i, p in enumerate(d.generators) if not _strictly_inside(p, box)]
    if outside:
        raise BboxTooSmall(f"bbox does not strictly contain generators {outside}")
    frame = _Frame(box, width)
    svg = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "width": str(frame.width),
        "height": str(frame.height),
        "viewBox": f"0 0 {frame.width} {frame.height}",
    })
    cells = ET.SubElement(svg, "g", {"class": "cells"})
    labels = ET.SubElement(svg, "g", {"class": "cell-labels", "font-size": "11",
                                      "text-anchor": "middle", "font-family": "monospace"})
    for f in range(len(d.arrangement.faces)):
        poly = cell_polygon(d, f, box)
        if not poly:
            continue
        code = format_code(d.code_of("face", f))
        pts = " ".join(",".join(frame(x, y)) for x, y in poly)
        ET.SubElement(cells, "polygon", {"points": pts, "fill": "#f4f4f4", "stroke": "none",
                                         "data-code": code})
        rep = representative_point(d.arrangement, "face", f)
        anchor = (rep.x, rep.y) if _strictly_inside(rep, box) else _centroid(poly)
        x, y = frame(*anchor)
        ET.SubElement(labels, "text", {"x": x, "y": y}).text = code
    lines = ET.SubElement(svg, "g", {"class": "bisectors", "stroke": "#333", "stroke-width": "1"})
    for b in d.bisectors:
        seg = clip_line(b.a, b.b, b.c, box)
        if seg is None:
            continue
        (xa, ya), (xb, yb) = frame(*seg[0]), frame(*seg[1])
        ET.SubElement(lines, "line", {"x1": xa, "y1": ya, "x2": xb, "y2": yb,
                                      "data-pair": f"{b.i},{b.j}"})
    if edge_labels:
        eg = ET.SubElement(svg, "g", {"class": "edge-labels", "font-size": "9", "fill": "#666"})
        for e in range(len(d.arrangement.edges)):
            p = representative_point(d.arrangement, "edge", e)
            if _strictly_inside(p, box):
                x, y = frame(p.x, p.y)
                ET.SubElement(eg, "text", {"x": x, "y": y}).text = format_code(d.code_of("edge", e))
    verts = ET.SubElement(svg, "g", {"class": "vertices"})
    for v in d.arrangement.vertices:
        if not _strictly_inside(v.location, box):
            continue
        x, y = frame(v.location.x, v.location.y)
        three = v.kind is VertexKind.ThreeI
        ET.SubElement(verts, "circle", {
            "cx": x, "cy": y, "r": "4" if three else "3",
            "fill": "#c0392b" if three else "#1f4e79",
            "class": "v3I" if three else "v2I",
            "data-code": format_code(d.code_of("vertex", v.id)),
        })
    gens = ET.SubElement(svg, "g", {"class": "generators", "font-size": "10"})
    for i, p in enumerate(d.generators):
        x, y = frame(p.x, p.y)
        ET.SubElement(gens, "rect", {"x": f"{float(x) - 3:.3f}", "y": f"{float(y) - 3:.3f}",
                                     "width": "6", "height": "6", "fill": "#000"})
        ET.SubElement(gens, "text", {"x": f"{float(x) + 5:.3f}", "y": f"{float(y) - 5:.3f}"}).text = f"p{i}"
    ET.indent(svg)
    return ET.tostring(svg, encoding="unicode") + "\n"
