"""Code-only topological reasoning between particles and between clusters.

Every predicate works on chromatic codes alone. Passing ``index`` (any
container of the codes realised in a concrete diagram, e.g. a
:class:`~oacd.diagram.FullOACD`) adds a realised/hidden flag to each piece of
evidence, because a shared boundary derived from codes may exist only in the
higher-dimensional lift of the diagram.
"""
from __future__ import annotations

import enum
import functools
import operator
import re
import warnings
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .chroma import (
    ChromaticCode,
    ParticleKind,
    as_code,
    chrom_dist,
    classify_kind,
    code_dist,
    equi_base,
    format_code,
    format_half,
)
from .exceptions import (
    EmptyCluster,
    InvariantViolation,
    KindMismatch,
    LengthMismatch,
    NotACell,
    NotAnEdge,
)


class ConjectureWarning(UserWarning):
    """An empirical expectation the theory states without proof failed."""


class Relation(enum.Enum):
    Equal = "equal"
    Contains = "contains"
    Segmented = "segmented"
    Joint = "joint"
    Connected = "connected"
    Collinear = "collinear"
    Disjoint = "disjoint"
    Touch = "touch"
    Overlaps = "overlaps"


@dataclass(frozen=True)
class RelationVerdict:
    relation: Relation
    evidence: tuple[ChromaticCode, ...] = ()
    realized: tuple[bool, ...] | None = None
    details: dict = field(default_factory=dict, compare=False)

    @property
    def hidden(self) -> tuple[ChromaticCode, ...]:
        if self.realized is None:
            return ()
        return tuple(c for c, r in zip(self.evidence, self.realized) if not r)

    def to_dict(self) -> dict:
        out = {
            "relation": self.relation.value,
            "evidence": [format_code(c) for c in self.evidence],
            "realized": None if self.realized is None else list(self.realized),
        }
        if self.details:
            out["details"] = _jsonable(self.details)
        return out


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, ChromaticCode):
        return format_code(obj)
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def _verdict(relation, evidence=(), index=None, **details) -> RelationVerdict:
    evidence = tuple(sorted(evidence))
    realized = None if index is None else tuple(c in index for c in evidence)
    return RelationVerdict(relation, evidence, realized, details)


def _require(code, kinds: Sequence[ParticleKind], exc=KindMismatch) -> ChromaticCode:
    code = as_code(code)
    kind = classify_kind(code)
    if kind not in kinds:
        names = "/".join(k.value for k in kinds)
        raise exc(f"{format_code(code)} is a {kind.value}, expected {names}")
    return code


_VERTEX = (ParticleKind.Vertex2I, ParticleKind.Vertex3I)


# -- boundary enumeration ----------------------------------------------------------

@functools.lru_cache(maxsize=1 << 16)
def half_positions(edge) -> tuple[int, int]:
    edge = _require(edge, (ParticleKind.Edge,), NotAnEdge)
    i, j = (p for p, v in enumerate(edge) if v % 2)
    return (i, j)


@functools.lru_cache(maxsize=1 << 16)
def e2v_2I(edge) -> frozenset[ChromaticCode]:
    """Candidate 2-I end vertices of an edge.

    Every pair of integer components ``w, w+1`` is replaced by ``w+1/2``.
    """
    edge = _require(edge, (ParticleKind.Edge,), NotAnEdge)
    where = {v: p for p, v in enumerate(edge) if v % 2 == 0}
    out = set()
    for w in sorted(where):
        if w + 2 in where:
            code = list(edge)
            code[where[w]] = code[where[w + 2]] = w + 1
            out.add(ChromaticCode(code))
    return frozenset(out)


@functools.lru_cache(maxsize=1 << 16)
def e2v_3I(edge) -> frozenset[ChromaticCode]:
    """Candidate 3-I end vertices of an edge.

    With the edge's halves at ``z + 1/2`` and an integer component ``w``,
    ``e = 2z + 1 + w`` must be a multiple of three and ``e / 3`` must not
    already occur among the remaining integer components.
    """
    edge = _require(edge, (ParticleKind.Edge,), NotAnEdge)
    i, j = half_positions(edge)
    half = edge[i]  # doubled: 2z + 1
    ints = {p: v for p, v in enumerate(edge) if v % 2 == 0}
    out = set()
    for k, w2 in sorted(ints.items(), key=lambda kv: kv[1]):
        e = half + w2 // 2
        if e % 3:
            continue
        y2 = 2 * (e // 3)
        if any(v == y2 for p, v in ints.items() if p != k):
            continue
        code = list(edge)
        code[i] = code[j] = code[k] = y2
        out.add(ChromaticCode(code))
    return frozenset(out)


def e2v(edge) -> frozenset[ChromaticCode]:
    return e2v_2I(edge) | e2v_3I(edge)


@functools.lru_cache(maxsize=1 << 16)
def c2e(cell) -> tuple[ChromaticCode, ...]:
    """The ``n - 1`` candidate boundary edges of a cell, ordered by ``z``."""
    cell = _require(cell, (ParticleKind.Cell,), NotACell)
    where = {v: p for p, v in enumerate(cell)}
    out = []
    for z in range(len(cell) - 1):
        code = list(cell)
        code[where[2 * z]] = code[where[2 * z + 2]] = 2 * z + 1
        out.append(ChromaticCode(code))
    return tuple(out)


@functools.lru_cache(maxsize=1 << 16)
def c2v(cell) -> frozenset[ChromaticCode]:
    out: set[ChromaticCode] = set()
    for edge in c2e(cell):
        out |= e2v(edge)
    return frozenset(out)


# -- particle-particle predicates ---------------------------------------------------

def vv_relation(phi1, phi2, index=None) -> RelationVerdict:
    phi1 = _require(phi1, _VERTEX)
    phi2 = _require(phi2, _VERTEX)
    if phi1 == phi2:
        return _verdict(Relation.Equal, (phi1,), index, delta=0, gamma=0)
    return _verdict(
        Relation.Disjoint, (), index, delta=chrom_dist(phi1, phi2), gamma=code_dist(phi1, phi2)
    )


def ve_relation(eta, phi, index=None) -> RelationVerdict:
    """Edge contains vertex iff the chromatic distance is at most 1 or 2."""
    eta = _require(eta, (ParticleKind.Edge,), NotAnEdge)
    phi = _require(phi, _VERTEX)
    delta = chrom_dist(eta, phi)
    by_distance = delta <= 4
    by_procedure = phi in e2v(eta)
    if by_distance != by_procedure:
        raise InvariantViolation(
            f"edge {format_code(eta)} / vertex {format_code(phi)}: distance rule says "
            f"{by_distance}, E2V says {by_procedure}"
        )
    details = dict(delta=delta, gamma=code_dist(eta, phi))
    if by_distance:
        return _verdict(Relation.Contains, (phi,), index, **details)
    return _verdict(Relation.Disjoint, (), index, **details)


SEGMENT_SIGNATURE = {
    frozenset([ParticleKind.Vertex2I]): 4,
    frozenset([ParticleKind.Vertex2I, ParticleKind.Vertex3I]): 6,
    frozenset([ParticleKind.Vertex3I]): 8,
}


def segment_signature(phi1, phi2) -> tuple[int, int]:
    """(observed, expected) doubled distance between the two ends of an edge."""
    kinds = frozenset([classify_kind(phi1), classify_kind(phi2)])
    return chrom_dist(phi1, phi2), SEGMENT_SIGNATURE[kinds]


def ve_segmented(eta, phi1, phi2) -> bool:
    """True iff the two vertices are the two ends of the edge.

    Also compares the ends' distance with the 2 / 3 / 4 signature by vertex
    kinds; a mismatch is reported as a :class:`ConjectureWarning`.
    """
    eta = _require(eta, (ParticleKind.Edge,), NotAnEdge)
    phi1 = _require(phi1, _VERTEX)
    phi2 = _require(phi2, _VERTEX)
    if phi1 == phi2:
        return False
    ends = e2v(eta)
    result = phi1 in ends and phi2 in ends
    if result:
        got, expected = segment_signature(phi1, phi2)
        if got != expected:
            warnings.warn(
                f"ends {format_code(phi1)}, {format_code(phi2)} of {format_code(eta)} are "
                f"at distance {format_half(got)}, expected {format_half(expected)}",
                ConjectureWarning,
                stacklevel=2,
            )
    return result


def vc_relation(zeta, phi, index=None) -> RelationVerdict:
    zeta = _require(zeta, (ParticleKind.Cell,), NotACell)
    phi = _require(phi, _VERTEX)
    delta = chrom_dist(zeta, phi)
    if delta < 4:
        raise InvariantViolation(
            f"cell {format_code(zeta)} and vertex {format_code(phi)} closer than 2"
        )
    details = dict(delta=delta, gamma=code_dist(zeta, phi))
    if delta == 4:
        return _verdict(Relation.Contains, (phi,), index, **details)
    return _verdict(Relation.Disjoint, (), index, **details)


def ee_collinear(eta1, eta2) -> bool:
    return half_positions(eta1) == half_positions(eta2)


# (doubled delta, gamma) -> vertex kind of the shared end
EE_JOINT_SIGNATURES = {
    (4, 2): ParticleKind.Vertex2I,
    (4, 4): ParticleKind.Vertex2I,
    (4, 3): ParticleKind.Vertex3I,
    (6, 2): ParticleKind.Vertex3I,
    (8, 3): ParticleKind.Vertex3I,
}


def ee_joint(eta1, eta2, index=None) -> RelationVerdict:
    eta1 = _require(eta1, (ParticleKind.Edge,), NotAnEdge)
    eta2 = _require(eta2, (ParticleKind.Edge,), NotAnEdge)
    collinear = ee_collinear(eta1, eta2)
    if eta1 == eta2:
        return _verdict(Relation.Equal, (eta1,), index, delta=0, gamma=0, collinear=True)
    delta, gamma = chrom_dist(eta1, eta2), code_dist(eta1, eta2)
    kind = EE_JOINT_SIGNATURES.get((delta, gamma))
    if kind is not None and (delta, gamma) == (8, 3) and equi_base(eta1, eta2):
        kind = None
    shared = e2v(eta1) & e2v(eta2)
    details = dict(delta=delta, gamma=gamma, collinear=collinear)
    if kind is None:
        if shared:
            raise InvariantViolation(
                f"edges {format_code(eta1)}, {format_code(eta2)} share candidate ends "
                f"{sorted(format_code(c) for c in shared)} outside the joint signatures"
            )
        return _verdict(Relation.Disjoint, (), index, **details)
    if len(shared) != 1 or classify_kind(next(iter(shared))) is not kind:
        raise InvariantViolation(
            f"edges {format_code(eta1)}, {format_code(eta2)}: signature says {kind.value} "
            f"joint but candidate ends are {sorted(format_code(c) for c in shared)}"
        )
    return _verdict(Relation.Joint, shared, index, vertex_kind=kind, **details)


def ec_relation(zeta, eta, index=None) -> RelationVerdict:
    zeta = _require(zeta, (ParticleKind.Cell,))
    eta = _require(eta, (ParticleKind.Edge,))
    delta = chrom_dist(zeta, eta)
    details = dict(delta=delta, gamma=code_dist(zeta, eta))
    if delta == 2:
        if eta not in c2e(zeta):
            raise InvariantViolation(
                f"edge {format_code(eta)} at distance 1 from {format_code(zeta)} "
                "is not among its C2E edges"
            )
        return _verdict(Relation.Contains, (eta,), index, **details)
    if 6 <= delta <= 8:
        shared = c2v(zeta) & e2v(eta)
        return _verdict(Relation.Joint, shared, index, **details)
    return _verdict(Relation.Disjoint, (), index, **details)


def shared_edge(zeta1, zeta2) -> ChromaticCode:
    """The edge between two adjacent cells: half their component sum."""
    return ChromaticCode((a + b) // 2 for a, b in zip(as_code(zeta1), as_code(zeta2)))


def cc_relation(zeta1, zeta2, index=None) -> RelationVerdict:
    zeta1 = _require(zeta1, (ParticleKind.Cell,), NotACell)
    zeta2 = _require(zeta2, (ParticleKind.Cell,), NotACell)
    delta = chrom_dist(zeta1, zeta2)
    details = dict(delta=delta, gamma=code_dist(zeta1, zeta2))
    if delta == 0:
        return _verdict(Relation.Equal, (zeta1,), index, **details)
    if delta == 4:
        return _verdict(Relation.Connected, (shared_edge(zeta1, zeta2),), index, **details)
    if delta == 8:
        shared = c2v(zeta1) & c2v(zeta2)
        if len(shared) != 1:
            raise InvariantViolation(
                f"cells {format_code(zeta1)}, {format_code(zeta2)} at distance 4 share "
                f"{len(shared)} candidate vertices"
            )
        return _verdict(Relation.Joint, shared, index, **details)
    return _verdict(Relation.Disjoint, (), index, **details)


def relate(a, b, index=None) -> RelationVerdict:
    """Dispatch to the right pairwise predicate by the particle kinds."""
    a, b = as_code(a), as_code(b)
    ka, kb = classify_kind(a), classify_kind(b)
    rank = {ParticleKind.Cell: 0, ParticleKind.Edge: 1, ParticleKind.Vertex2I: 2, ParticleKind.Vertex3I: 2}
    if rank[ka] > rank[kb]:
        a, b, ka, kb = b, a, kb, ka
    if ka.is_vertex:
        return vv_relation(a, b, index)
    if ka is ParticleKind.Edge:
        if kb is ParticleKind.Edge:
            return ee_joint(a, b, index)
        return ve_relation(a, b, index)
    if kb is ParticleKind.Cell:
        return cc_relation(a, b, index)
    if kb is ParticleKind.Edge:
        return ec_relation(a, b, index)
    return vc_relation(a, b, index)


# -- clusters -----------------------------------------------------------------------

def _cluster(xi) -> list[ChromaticCode]:
    members = [as_code(c) for c in xi]
    if not members:
        raise EmptyCluster("cluster has no cells")
    for m in members:
        _require(m, (ParticleKind.Cell,), NotACell)
    return members


@dataclass
class Connectivity:
    connected: bool
    components: list[list[int]]
    links: list[tuple[int, int]]

    def __bool__(self):
        return self.connected

    def path(self, a: int, b: int) -> list[int] | None:
        """Member indices from ``a`` to ``b`` through adjacent cells, if any."""
        nbrs: dict[int, list[int]] = {}
        for s, t in self.links:
            nbrs.setdefault(s, []).append(t)
            nbrs.setdefault(t, []).append(s)
        prev = {a: None}
        queue = deque([a])
        while queue:
            u = queue.popleft()
            if u == b:
                out = [u]
                while prev[out[-1]] is not None:
                    out.append(prev[out[-1]])
                return out[::-1]
            for w in nbrs.get(u, ()):
                if w not in prev:
                    prev[w] = u
                    queue.append(w)
        return None


def conn(xi) -> Connectivity:
    """Seed / waiting-list flood over member pairs at chromatic distance 2."""
    members = _cluster(xi)
    m = len(members)
    links = [
        (s, t) for s in range(m) for t in range(s + 1, m) if chrom_dist(members[s], members[t]) == 4
    ]
    adjacent = {s: set() for s in range(m)}
    for s, t in links:
        adjacent[s].add(t)
        adjacent[t].add(s)
    waiting = set(range(m))
    components = []
    while waiting:
        seed = min(waiting)
        waiting.discard(seed)
        connected = [seed]
        grew = True
        while grew and waiting:
            grew = False
            for w in sorted(waiting):
                if adjacent[w] & set(connected):
                    connected.append(w)
                    waiting.discard(w)
                    grew = True
                    break
        components.append(sorted(connected))
    return Connectivity(len(components) == 1, components, links)


@dataclass(frozen=True)
class DistanceMatrix:
    rows: tuple[ChromaticCode, ...]
    cols: tuple[ChromaticCode, ...]
    values: np.ndarray  # doubled chromatic distances

    @property
    def shape(self):
        return self.values.shape

    def natural_values(self) -> np.ndarray:
        return self.values / 2


def _code_array(codes: Sequence[ChromaticCode]) -> np.ndarray:
    return np.array([list(c) for c in codes], dtype=np.int64)


def dmatrix(theta1, theta2) -> DistanceMatrix:
    rows = tuple(as_code(c) for c in theta1)
    cols = tuple(as_code(c) for c in theta2)
    if not rows or not cols:
        raise EmptyCluster("distance matrix of an empty complex")
    a, b = _code_array(rows), _code_array(cols)
    if a.shape[1] != b.shape[1]:
        raise LengthMismatch(f"codes of length {a.shape[1]} and {b.shape[1]}")
    values = np.abs(a[:, None, :] - b[None, :, :]).sum(axis=2)
    return DistanceMatrix(rows, cols, values)


def imatrix(theta) -> DistanceMatrix:
    return dmatrix(theta, theta)


def amatrix(xi) -> np.ndarray:
    """Adjacency between cells: 1 where the chromatic distance is 2."""
    return (imatrix(_cluster(xi)).values == 4).astype(np.int64)


def rmatrix(xi) -> np.ndarray:
    """Reflexive-transitive closure of :func:`amatrix` (Warshall)."""
    reach = amatrix(xi).astype(bool) | np.eye(len(xi), dtype=bool)
    for k in range(reach.shape[0]):
        reach |= reach[:, k : k + 1] & reach[k : k + 1, :]
    return reach.astype(np.int64)


_OPS = {
    "=": operator.eq,
    "==": operator.eq,
    "!=": operator.ne,
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
}
_COND = re.compile(r"^\s*(==|=|!=|<=|>=|<|>)?\s*(\d+(?:\.5)?|\d+/2)\s*$")


def _condition(condition) -> Callable[[np.ndarray], np.ndarray]:
    """Turn ``2``, ``"<=2"``, ``"!=2"`` or a callable into a doubled-unit mask."""
    if callable(condition):
        return lambda doubled: np.vectorize(condition, otypes=[bool])(doubled / 2)
    if isinstance(condition, str):
        m = _COND.match(condition)
        if not m:
            raise ValueError(f"bad cdn condition {condition!r}")
        op = _OPS[m.group(1) or "="]
        text = m.group(2)
        doubled = int(text[:-2]) if text.endswith("/2") else int(round(float(text) * 2))
        return lambda values: op(values, doubled)
    doubled = condition * 2
    return lambda values: values == doubled


def cdn(dm: DistanceMatrix, condition) -> int:
    """How many entries of ``dm`` satisfy ``condition`` (natural units)."""
    return int(_condition(condition)(dm.values).sum())


CDN_READINGS = ("union", "cross", "literal")


def shared_cells(xi1, xi2, reading: str = "union") -> float:
    """Shared-cell count as the cdn equals/contains rules compute it.

    ``union``: half the off-diagonal zeros of the internal matrix of the
    concatenated clusters. ``cross``: zeros of ``dM(xi1, xi2)`` with the half
    dropped. ``literal``: half the zeros of ``dM(xi1, xi2)``.
    """
    if reading == "union":
        im = imatrix([*xi1, *xi2]).values
        off = int((im == 0).sum()) - im.shape[0]
        return off / 2
    cross = cdn(dmatrix(xi1, xi2), 0)
    if reading == "cross":
        return float(cross)
    if reading == "literal":
        return cross / 2
    raise ValueError(f"unknown cdn reading {reading!r}")


def _cdn_relation(xi1, xi2, reading: str) -> tuple[Relation | None, str | None]:
    dm = dmatrix(xi1, xi2)
    s = shared_cells(xi1, xi2, reading)
    n1, n2 = len(xi1), len(xi2)
    if n2 == s == n1:
        return Relation.Equal, None
    if n2 == s < n1:
        return Relation.Contains, "first"
    if n1 == s < n2:
        return Relation.Contains, "second"
    if 1 <= s < min(n1, n2):
        return Relation.Overlaps, None
    if cdn(dm, 0) == 0 and cdn(dm, 2) > 0:
        return Relation.Touch, None
    if cdn(dm, "<=2") == 0 and cdn(dm, 4) > 0:
        return Relation.Joint, None
    if cdn(dm, "<=4") == 0:
        return Relation.Disjoint, None
    return None, None


def cluster_edges(xi) -> set[ChromaticCode]:
    return {e for c in xi for e in c2e(c)}


def cluster_vertices(xi) -> set[ChromaticCode]:
    return {v for c in xi for v in c2v(c)}


def cscs_relation(xi1, xi2, reading: str = "union", index=None) -> RelationVerdict:
    """Cluster-cluster relation from member sets, cross-checked by cdn rules.

    Precedence: Equal, Contains, Overlaps, Touch, Joint, Disjoint. A
    disagreement between the two rule systems is reported in
    ``details["agree"]`` and ``details["cdn_relation"]``.
    """
    a, b = _cluster(xi1), _cluster(xi2)
    sa, sb = set(a), set(b)
    common = sa & sb
    container = None
    if sa == sb:
        relation, evidence = Relation.Equal, common
    elif sb < sa:
        relation, evidence, container = Relation.Contains, common, "first"
    elif sa < sb:
        relation, evidence, container = Relation.Contains, common, "second"
    elif common:
        relation, evidence = Relation.Overlaps, common
    else:
        edges = cluster_edges(a) & cluster_edges(b)
        if edges:
            relation, evidence = Relation.Touch, edges
        else:
            verts = cluster_vertices(a) & cluster_vertices(b)
            relation, evidence = (Relation.Joint, verts) if verts else (Relation.Disjoint, ())
    by_cdn, cdn_container = _cdn_relation(a, b, reading)
    agree = by_cdn is relation and cdn_container == container
    details = dict(
        reading=reading,
        shared=shared_cells(a, b, reading),
        cdn_relation=None if by_cdn is None else by_cdn,
        agree=agree,
    )
    if container:
        details["container"] = container
    return _verdict(relation, evidence, index, **details)
