"""Chromatic codes and their algebra.

A code is stored *doubled*: component ``t_i`` is kept as the integer
``2 * t_i`` so that half-integers never leave integer arithmetic. All
distances returned here are doubled as well; :func:`natural_units` converts a
doubled quantity back for display.
"""
from __future__ import annotations

import enum
import functools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exceptions import BadCode, BadDigit, LengthMismatch, NotAParticle

DIGITS = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ"


class ChromaticCode(tuple):
    """Immutable tuple of doubled, non-negative integer components."""

    __slots__ = ()

    def __new__(cls, doubled: Iterable[int]):
        values = tuple(int(v) for v in doubled)
        if any(v < 0 for v in values):
            raise BadCode(f"negative component in {values}")
        return super().__new__(cls, values)

    @classmethod
    def from_components(cls, components: Iterable) -> "ChromaticCode":
        """Build from natural-unit components (ints, halves as Fractions/floats)."""
        doubled = []
        for t in components:
            d = Fraction(t) * 2
            if d.denominator != 1:
                raise BadCode(f"component {t!r} is not a multiple of 1/2")
            doubled.append(int(d))
        return cls(doubled)

    @property
    def n(self) -> int:
        return len(self)

    @property
    def components(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, 2) for v in self)

    def __add__(self, other):
        _same_length(self, other)
        return ChromaticCode(a + b for a, b in zip(self, other))

    def __str__(self):
        return format_code(self)

    def __repr__(self):
        return f"ChromaticCode({format_code(self)})"


Code = ChromaticCode


def _same_length(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise LengthMismatch(f"codes of length {len(a)} and {len(b)}")


def as_code(c) -> ChromaticCode:
    if isinstance(c, ChromaticCode):
        return c
    if isinstance(c, str):
        return parse_code(c)
    return ChromaticCode(c)


def natural_units(doubled: int) -> Fraction:
    return Fraction(doubled, 2)


def format_half(doubled: int) -> str:
    """Render a doubled quantity in natural units, halves as ``.5``."""
    return str(doubled // 2) if doubled % 2 == 0 else f"{doubled // 2}.5"


class ParticleKind(enum.Enum):
    Cell = "cell"
    Edge = "edge"
    Vertex2I = "vertex2I"
    Vertex3I = "vertex3I"

    @property
    def is_vertex(self) -> bool:
        return self in (ParticleKind.Vertex2I, ParticleKind.Vertex3I)


@dataclass(frozen=True)
class Particle:
    kind: ParticleKind
    code: ChromaticCode
    geom: str | None = None

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "code": list(self.code), "geom_id": self.geom}


@dataclass(frozen=True)
class Complex:
    members: tuple[ChromaticCode, ...]
    code: ChromaticCode

    @classmethod
    def of(cls, members: Iterable) -> "Complex":
        members = tuple(as_code(m) for m in members)
        return cls(members, complex_code(members))

    def __len__(self):
        return len(self.members)

    @property
    def is_cluster(self) -> bool:
        return all(_kind_or_none(m) is ParticleKind.Cell for m in self.members)


# -- Definition-level operations -------------------------------------------------

def code_from_signs(signs: Sequence[int], pairs: Sequence[tuple[int, int]], n: int) -> ChromaticCode:
    """Sum the half-plane contributions of every bisector.

    ``signs[s]`` is -1, 0 or +1 for bisector ``pairs[s] = (i, j)``: -1 (closer
    to ``p_i``) adds 1 to ``t_i``, +1 adds 1 to ``t_j`` and 0 adds 1/2 to both.
    """
    if len(signs) != len(pairs):
        raise LengthMismatch(f"{len(signs)} signs for {len(pairs)} bisectors")
    doubled = [0] * n
    for s, (i, j) in zip(signs, pairs):
        if s < 0:
            doubled[i] += 2
        elif s > 0:
            doubled[j] += 2
        else:
            doubled[i] += 1
            doubled[j] += 1
    return ChromaticCode(doubled)


def base(c) -> tuple[int, ...]:
    """Chromatic base: the components in ascending order (doubled)."""
    return tuple(sorted(as_code(c)))


def equi_color(a, b) -> bool:
    a, b = as_code(a), as_code(b)
    _same_length(a, b)
    return tuple(a) == tuple(b)


def equi_base(a, b) -> bool:
    a, b = as_code(a), as_code(b)
    _same_length(a, b)
    return base(a) == base(b)


def count_components(c, m) -> int:
    """How many components equal ``m`` (given in natural units)."""
    target = Fraction(m) * 2
    if target.denominator != 1:
        return 0
    return sum(1 for v in as_code(c) if v == target)


def diff_tuple(a, b) -> tuple[int, ...]:
    a, b = as_code(a), as_code(b)
    _same_length(a, b)
    return tuple(abs(x - y) for x, y in zip(a, b))


def chrom_dist(a, b) -> int:
    """Doubled Manhattan distance between two codes."""
    return sum(diff_tuple(a, b))


# the earlier literature's name for the same quantity
transition_number = chrom_dist


def code_dist(a, b) -> int:
    """Number of positions where the two codes differ."""
    return sum(1 for d in diff_tuple(a, b) if d)


def complex_code(members: Iterable) -> ChromaticCode:
    members = [as_code(m) for m in members]
    if not members:
        raise ValueError("a complex needs at least one member")
    n = len(members[0])
    total = [0] * n
    for m in members:
        _same_length(members[0], m)
        for i, v in enumerate(m):
            total[i] += v
    return ChromaticCode(total)


def is_valid_particle_code(c) -> bool:
    c = as_code(c)
    n = len(c)
    return n >= 2 and sum(c) == n * (n - 1) and all(v <= 2 * (n - 1) for v in c)


def classify_kind(c) -> ParticleKind:
    return _classify(as_code(c))


@functools.lru_cache(maxsize=1 << 16)
def _classify(c: ChromaticCode) -> ParticleKind:
    if not is_valid_particle_code(c):
        raise NotAParticle(f"{format_code(c)} violates the particle sum/range invariant")
    halves = [v for v in c if v % 2]
    ints = [v for v in c if v % 2 == 0]
    ints_distinct = len(set(ints)) == len(ints)
    if not halves:
        if ints_distinct:
            return ParticleKind.Cell
        counts = Counter(ints)
        repeated = [v for v, k in counts.items() if k > 1]
        if len(repeated) == 1 and counts[repeated[0]] == 3:
            return ParticleKind.Vertex3I
    elif ints_distinct:
        hc = Counter(halves)
        if len(halves) == 2 and len(hc) == 1:
            return ParticleKind.Edge
        if len(halves) == 4 and len(hc) == 2 and all(k == 2 for k in hc.values()):
            return ParticleKind.Vertex2I
    raise NotAParticle(f"{format_code(c)} matches no particle kind")


def _kind_or_none(c) -> ParticleKind | None:
    try:
        return classify_kind(c)
    except NotAParticle:
        return None


def base_pattern_matches(c, kind: ParticleKind) -> bool:
    """Check the closed-form base of ``kind`` for an ``n``-component code."""
    c = as_code(c)
    n = len(c)
    got = base(c)
    return got in expected_bases(n, kind)


@functools.lru_cache(maxsize=None)
def expected_bases(n: int, kind: ParticleKind) -> frozenset[tuple[int, ...]]:
    N = set(range(n))

    def doubled(values):
        return tuple(sorted(2 * Fraction(v) for v in values))

    out = set()
    if kind is ParticleKind.Cell:
        out.add(doubled(N))
    elif kind is ParticleKind.Edge:
        for z in range(n - 1):
            half = Fraction(2 * z + 1, 2)
            out.add(doubled([*(N - {z, z + 1}), half, half]))
    elif kind is ParticleKind.Vertex2I:
        for z1 in range(n - 3):
            for z2 in range(z1 + 2, n - 1):
                h1 = Fraction(2 * z1 + 1, 2)
                h2 = Fraction(2 * z2 + 1, 2)
                out.add(doubled([*(N - {z1, z1 + 1, z2, z2 + 1}), h1, h1, h2, h2]))
    elif kind is ParticleKind.Vertex3I:
        for z in range(n - 2):
            out.add(doubled([*(N - {z, z + 1, z + 2}), z + 1, z + 1, z + 1]))
    return frozenset(tuple(int(v) for v in b) for b in out)


# -- Serialisation ----------------------------------------------------------------

def format_code(c) -> str:
    """Compact digit string of doubled components, or ``d:`` + comma list."""
    c = tuple(c)
    if all(0 <= v < len(DIGITS) for v in c):
        return "".join(DIGITS[v] for v in c)
    return "d:" + ",".join(str(v) for v in c)


def parse_code(s: str, n: int | None = None) -> ChromaticCode:
    text = s.strip()
    if text.startswith("d:") or "," in text:
        body = text[2:] if text.startswith("d:") else text
        try:
            values = [int(part) for part in body.split(",")]
        except ValueError as exc:
            raise BadDigit(f"bad component list in {s!r}") from exc
    else:
        values = []
        for ch in text.upper():
            k = DIGITS.find(ch)
            if k < 0:
                raise BadDigit(f"bad digit {ch!r} in {s!r}")
            values.append(k)
    if not values:
        raise BadCode("empty code")
    if n is not None and len(values) != n:
        raise LengthMismatch(f"{s!r} has {len(values)} components, expected {n}")
    return ChromaticCode(values)


def format_components(c) -> str:
    """Natural-unit tuple, e.g. ``(0, 7/2, 5, 1, 2, 7/2)``."""
    parts = [str(v // 2) if v % 2 == 0 else f"{v}/2" for v in as_code(c)]
    return "(" + ", ".join(parts) + ")"
