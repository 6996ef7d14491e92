"""Planar arrangement of all perpendicular bisectors of a generator set.

Construction is a per-line sweep: every bisector collects its exact
intersection points with the others, the points are sorted along the line and
consecutive ones become edges (the outer two are rays). Faces are traced with
half-edge ``next`` pointers ordered by exact angular comparison around each
vertex. Sign vectors are seeded at one edge and propagated across edges, so
they are a function of the incidence structure rather than of any point.
"""
from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Sequence

from .exact_geom import (
    Bisector,
    GeneratorSet,
    Point2,
    as_generator_set,
    bisectors_of,
    intersection_groups,
    is_triangle,
    validate_general_position,
)
from .exceptions import DegenerateInput, MalformedUnit

NEG, ZERO, POS = -1, 0, 1

SignVector = tuple  # tuple[int, ...] with entries in {-1, 0, 1}


class VertexKind(enum.Enum):
    TwoI = "2I"
    ThreeI = "3I"


@dataclass
class ArrVertex:
    id: int
    location: Point2
    zero_set: tuple[int, ...]
    kind: VertexKind
    # outgoing half-edges in counter-clockwise order
    star: list[tuple[int, int]] = field(default_factory=list)

    @property
    def edges(self) -> list[int]:
        return [e for e, _ in self.star]


@dataclass
class ArrEdge:
    id: int
    carrier: int
    # ordered along the carrier direction (-b, a); None marks infinity
    endpoints: tuple[int | None, int | None]
    # (face left of the forward half-edge, face right of it)
    faces: tuple[int, int] = (-1, -1)

    @property
    def bounded(self) -> bool:
        return None not in self.endpoints

    @property
    def unbounded_flags(self) -> tuple[bool, bool]:
        return (self.endpoints[0] is None, self.endpoints[1] is None)


@dataclass
class ArrFace:
    id: int
    # half-edges (edge id, +1 forward / -1 backward) with the face on their left
    boundary: list[tuple[int, int]]
    bounded: bool

    @property
    def edges(self) -> list[int]:
        return [e for e, _ in self.boundary]


@dataclass
class Unit:
    """A vertex with its incident edges and faces in counter-clockwise order.

    ``faces[m]`` lies between ``edges[m]`` and ``edges[m + 1]``.
    """

    vertex: int
    kind: VertexKind
    edges: tuple[int, ...]
    faces: tuple[int, ...]

    def cycle(self) -> list[tuple[str, int]]:
        out = []
        for e, f in zip(self.edges, self.faces):
            out.append(("edge", e))
            out.append(("face", f))
        return out


@dataclass
class Arrangement:
    generators: GeneratorSet
    bisectors: list[Bisector]
    vertices: list[ArrVertex]
    edges: list[ArrEdge]
    faces: list[ArrFace]
    vertex_signs: list[SignVector]
    edge_signs: list[SignVector]
    face_signs: list[SignVector]

    @property
    def k(self) -> int:
        return len(self.bisectors)

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [b.pair for b in self.bisectors]

    def vertex_edges(self, v: int) -> list[int]:
        return self.vertices[v].edges

    def edge_faces(self, e: int) -> tuple[int, int]:
        return self.edges[e].faces

    def vertex_faces(self, v: int) -> list[int]:
        return [self._left_face(h) for h in self.vertices[v].star]

    def face_vertices(self, f: int) -> list[int]:
        out = []
        for e, d in self.faces[f].boundary:
            a, b = self.edges[e].endpoints
            origin = a if d > 0 else b
            if origin is not None:
                out.append(origin)
        return out

    def _left_face(self, half: tuple[int, int]) -> int:
        e, d = half
        left, right = self.edges[e].faces
        return left if d > 0 else right

    def counts(self) -> dict[str, int]:
        two = sum(1 for v in self.vertices if v.kind is VertexKind.TwoI)
        return {
            "cells": len(self.faces),
            "edges": len(self.edges),
            "vertices_3I": len(self.vertices) - two,
            "vertices_2I": two,
        }

    def euler(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)


# -- exact helpers ---------------------------------------------------------------

def _homogeneous(p: Point2) -> tuple[int, int, int]:
    w = math.lcm(p.x.denominator, p.y.denominator)
    return (p.x.numerator * (w // p.x.denominator), p.y.numerator * (w // p.y.denominator), w)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def signs_at(p: Point2, bisectors: Sequence[Bisector]) -> SignVector:
    """Evaluate every bisector's line form at ``p`` (exact)."""
    X, Y, W = _homogeneous(p)
    return tuple(_sign(b.a * X + b.b * Y + b.c * W) for b in bisectors)


def _half_plane(dx: int, dy: int) -> int:
    return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1


def _angle_cmp(u: tuple[int, int], v: tuple[int, int]) -> int:
    hu, hv = _half_plane(*u), _half_plane(*v)
    if hu != hv:
        return -1 if hu < hv else 1
    cross = u[0] * v[1] - u[1] * v[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


# -- construction ----------------------------------------------------------------

def build_arrangement(g) -> Arrangement:
    """Build the full incidence structure for a general-position generator set."""
    report = validate_general_position(g)
    if not report.ok:
        raise DegenerateInput(report)
    gens = as_generator_set(g)
    bis = bisectors_of(gens.points)
    k = len(bis)

    groups = intersection_groups(bis)
    locations = sorted(groups, key=lambda p: (p.x, p.y))
    vertices: list[ArrVertex] = []
    on_line: list[list[int]] = [[] for _ in range(k)]
    for vid, loc in enumerate(locations):
        members = tuple(sorted(groups[loc]))
        pairs = [bis[s].pair for s in members]
        if len(members) == 3 and is_triangle(pairs):
            kind = VertexKind.ThreeI
        elif len(members) == 2 and len({*pairs[0], *pairs[1]}) == 4:
            kind = VertexKind.TwoI
        else:  # pragma: no cover - excluded by validation
            raise DegenerateInput(report)
        vertices.append(ArrVertex(vid, loc, members, kind))
        for s in members:
            on_line[s].append(vid)

    edges: list[ArrEdge] = []
    for s, b in enumerate(bis):
        dx, dy = b.direction
        pts = sorted(on_line[s], key=lambda v: dx * locations[v].x + dy * locations[v].y)
        stops: list[int | None] = [None, *pts, None]
        for a, c in zip(stops, stops[1:]):
            eid = len(edges)
            edges.append(ArrEdge(eid, s, (a, c)))
            if a is not None:
                vertices[a].star.append((eid, +1))
            if c is not None:
                vertices[c].star.append((eid, -1))

    def out_dir(half: tuple[int, int]) -> tuple[int, int]:
        e, d = half
        dx, dy = bis[edges[e].carrier].direction
        return (dx, dy) if d > 0 else (-dx, -dy)

    for v in vertices:
        v.star.sort(key=cmp_to_key(lambda h1, h2: _angle_cmp(out_dir(h1), out_dir(h2))))
        expected = 4 if v.kind is VertexKind.TwoI else 6
        if len(v.star) != expected:
            raise MalformedUnit(f"vertex {v.id} has degree {len(v.star)}, expected {expected}")

    # position of each outgoing half-edge in its vertex star
    star_pos: dict[tuple[int, int], tuple[int, int]] = {}
    for v in vertices:
        for m, h in enumerate(v.star):
            star_pos[h] = (v.id, m)

    def origin(h):
        e, d = h
        a, c = edges[e].endpoints
        return a if d > 0 else c

    def dest(h):
        e, d = h
        a, c = edges[e].endpoints
        return c if d > 0 else a

    def nxt(h):
        twin = (h[0], -h[1])
        vid, m = star_pos[twin]
        star = vertices[vid].star
        return star[m - 1]

    half_edges = [(e.id, d) for e in edges for d in (+1, -1)]
    face_of: dict[tuple[int, int], int] = {}
    faces: list[ArrFace] = []

    def trace(start, bounded):
        fid = len(faces)
        chain = []
        h = start
        while True:
            face_of[h] = fid
            chain.append(h)
            if dest(h) is None:
                break
            h = nxt(h)
            if h == start:
                break
        faces.append(ArrFace(fid, chain, bounded))

    for h in half_edges:
        if h not in face_of and origin(h) is None:
            trace(h, bounded=False)
    for h in half_edges:
        if h not in face_of:
            trace(h, bounded=True)

    for e in edges:
        e.faces = (face_of[(e.id, +1)], face_of[(e.id, -1)])

    face_signs, edge_signs, vertex_signs = _propagate_signs(gens, bis, vertices, edges, faces)
    return Arrangement(gens, bis, vertices, edges, faces, vertex_signs, edge_signs, face_signs)


def _propagate_signs(gens, bis, vertices, edges, faces):
    k = len(bis)
    seed_edge = edges[0]
    seed = list(signs_at(_edge_point(gens, bis, vertices, seed_edge), bis))
    seed[seed_edge.carrier] = ZERO
    if any(s == ZERO for i, s in enumerate(seed) if i != seed_edge.carrier):
        raise AssertionError("seed point of an edge lies on a second bisector")

    face_signs: list[list[int] | None] = [None] * len(faces)
    left, right = seed_edge.faces
    sv = list(seed)
    sv[seed_edge.carrier] = NEG
    face_signs[left] = sv
    queue = deque([left])
    while queue:
        f = queue.popleft()
        for e, d in faces[f].boundary:
            edge = edges[e]
            other = edge.faces[1] if d > 0 else edge.faces[0]
            if face_signs[other] is None:
                sv = list(face_signs[f])
                sv[edge.carrier] = -sv[edge.carrier]
                face_signs[other] = sv
                queue.append(other)
    if any(s is None for s in face_signs):
        raise AssertionError("face adjacency graph is disconnected")

    edge_signs = []
    for edge in edges:
        lf, rf = edge.faces
        a = list(face_signs[lf])
        b = list(face_signs[rf])
        if a[edge.carrier] != NEG or b[edge.carrier] != POS:
            raise AssertionError(f"edge {edge.id}: faces on the wrong sides of its carrier")
        a[edge.carrier] = ZERO
        b[edge.carrier] = ZERO
        if a != b:
            raise AssertionError(f"edge {edge.id}: incident faces differ off the carrier")
        edge_signs.append(tuple(a))

    vertex_signs = []
    for v in vertices:
        sv = list(edge_signs[v.star[0][0]])
        for s in v.zero_set:
            sv[s] = ZERO
        vertex_signs.append(tuple(sv))

    if len({tuple(s) for s in face_signs}) != len(faces):
        raise AssertionError("two traced faces share a sign vector")
    return [tuple(s) for s in face_signs], edge_signs, vertex_signs


# -- representative points -------------------------------------------------------

def _edge_point(gens, bis, vertices, edge: ArrEdge) -> Point2:
    b = bis[edge.carrier]
    a, c = edge.endpoints
    if a is not None and c is not None:
        pa, pc = vertices[a].location, vertices[c].location
        return Point2((pa.x + pc.x) / 2, (pa.y + pc.y) / 2)
    dx, dy = b.direction
    if a is not None:
        pa = vertices[a].location
        return Point2(pa.x + dx, pa.y + dy)
    if c is not None:
        pc = vertices[c].location
        return Point2(pc.x - dx, pc.y - dy)
    p, q = gens[b.i], gens[b.j]
    return Point2((p.x + q.x) / 2, (p.y + q.y) / 2)


def representative_point(arr: Arrangement, kind: str, idx: int) -> Point2:
    """A rational point in the relative interior of a particle.

    ``kind`` is ``"vertex"``, ``"edge"`` or ``"face"``.
    """
    if kind == "vertex":
        return arr.vertices[idx].location
    if kind == "edge":
        return _edge_point(arr.generators, arr.bisectors, arr.vertices, arr.edges[idx])
    if kind == "face":
        return _face_point(arr, idx)
    raise ValueError(f"unknown particle kind {kind!r}")


def _face_point(arr: Arrangement, f: int) -> Point2:
    e, d = arr.faces[f].boundary[0]
    edge = arr.edges[e]
    m = _edge_point(arr.generators, arr.bisectors, arr.vertices, edge)
    carrier = arr.bisectors[edge.carrier]
    # the face is left of the half-edge, i.e. on the negative side when d > 0
    nx, ny = (-carrier.a, -carrier.b) if d > 0 else (carrier.a, carrier.b)
    eps = Fraction(1)
    for s, b in enumerate(arr.bisectors):
        if s == edge.carrier:
            continue
        value = b.evaluate(m)
        rate = b.a * nx + b.b * ny
        if rate and (value > 0) != (rate > 0):
            eps = min(eps, -value / rate)
    eps /= 2
    # the bound above is already inside the face; the halving only guards
    # against an off-by-one in it and gives up rather than loop, so a wrong
    # propagated sign vector surfaces as an oracle mismatch
    target = arr.face_signs[f]
    for _ in range(64):
        p = Point2(m.x + eps * nx, m.y + eps * ny)
        if signs_at(p, arr.bisectors) == target:
            return p
        eps /= 2
    return p


def sign_vector(arr: Arrangement, kind: str, idx: int) -> SignVector:
    if kind == "vertex":
        return arr.vertex_signs[idx]
    if kind == "edge":
        return arr.edge_signs[idx]
    if kind == "face":
        return arr.face_signs[idx]
    raise ValueError(f"unknown particle kind {kind!r}")


def enumerate_units(arr: Arrangement) -> list[Unit]:
    units = []
    for v in arr.vertices:
        expected = 4 if v.kind is VertexKind.TwoI else 6
        if len(v.star) != expected:
            raise MalformedUnit(f"vertex {v.id} has degree {len(v.star)}, expected {expected}")
        edges = tuple(e for e, _ in v.star)
        faces = tuple(arr._left_face(h) for h in v.star)
        units.append(Unit(v.id, v.kind, edges, faces))
    return units
