"""Full-coded diagram: the arrangement plus a chromatic code on every particle."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .arrangement import (
    Arrangement,
    Unit,
    VertexKind,
    build_arrangement,
    enumerate_units,
    representative_point,
)
from .chroma import ChromaticCode, Particle, ParticleKind, code_from_signs, format_code
from .exact_geom import GeneratorSet, Point2

GEOM_PREFIX = {"vertex": "v", "edge": "e", "face": "f"}
_PREFIX_KIND = {v: k for k, v in GEOM_PREFIX.items()}


def geom_id(kind: str, idx: int) -> str:
    return f"{GEOM_PREFIX[kind]}{idx}"


def parse_geom_id(gid: str) -> tuple[str, int]:
    return _PREFIX_KIND[gid[0]], int(gid[1:])


@dataclass
class FullOACD:
    arrangement: Arrangement
    particles: list[Particle]
    index: dict[ChromaticCode, Particle]

    @property
    def generators(self) -> GeneratorSet:
        return self.arrangement.generators

    @property
    def n(self) -> int:
        return self.arrangement.generators.n

    @property
    def bisectors(self):
        return self.arrangement.bisectors

    def __contains__(self, code) -> bool:
        return code in self.index

    def __iter__(self) -> Iterator[Particle]:
        return iter(self.particles)

    def __len__(self):
        return len(self.particles)

    def of_kind(self, *kinds: ParticleKind) -> list[Particle]:
        return [p for p in self.particles if p.kind in kinds]

    @property
    def cells(self) -> list[Particle]:
        return self.of_kind(ParticleKind.Cell)

    @property
    def edges(self) -> list[Particle]:
        return self.of_kind(ParticleKind.Edge)

    @property
    def vertices(self) -> list[Particle]:
        return self.of_kind(ParticleKind.Vertex2I, ParticleKind.Vertex3I)

    def code_of(self, kind: str, idx: int) -> ChromaticCode:
        return self._by_geom[geom_id(kind, idx)].code

    def particle_at(self, gid: str) -> Particle:
        return self._by_geom[gid]

    def representative_point(self, particle: Particle) -> Point2:
        kind, idx = parse_geom_id(particle.geom)
        return representative_point(self.arrangement, kind, idx)

    def units(self) -> list[Unit]:
        return enumerate_units(self.arrangement)

    def __post_init__(self):
        self._by_geom = {p.geom: p for p in self.particles}

    def to_records(self) -> list[dict]:
        out = []
        for p in self.particles:
            rec = p.to_dict()
            rec["compact"] = format_code(p.code)
            out.append(rec)
        return out


def build_diagram(g) -> FullOACD:
    """Build the arrangement for ``g`` and code every vertex, edge and cell."""
    arr = build_arrangement(g)
    n = arr.generators.n
    pairs = arr.pairs
    particles: list[Particle] = []
    for f, sv in enumerate(arr.face_signs):
        particles.append(Particle(ParticleKind.Cell, code_from_signs(sv, pairs, n), geom_id("face", f)))
    for e, sv in enumerate(arr.edge_signs):
        particles.append(Particle(ParticleKind.Edge, code_from_signs(sv, pairs, n), geom_id("edge", e)))
    for v, sv in enumerate(arr.vertex_signs):
        kind = (
            ParticleKind.Vertex2I
            if arr.vertices[v].kind is VertexKind.TwoI
            else ParticleKind.Vertex3I
        )
        particles.append(Particle(kind, code_from_signs(sv, pairs, n), geom_id("vertex", v)))
    index: dict[ChromaticCode, Particle] = {}
    for p in particles:
        # duplicates would contradict code uniqueness; keep the first and let
        # the verification layer report the clash
        index.setdefault(p.code, p)
    return FullOACD(arr, particles, index)
