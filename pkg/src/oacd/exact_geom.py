"""Exact rational primitives: points, perpendicular bisectors, sides, and
general-position validation of generator sets.

Coordinates are :class:`fractions.Fraction` throughout. Nothing in this module
ever rounds.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .exceptions import CoincidentLines, CoincidentPoints, InexactInput, InputError

Rational = Fraction


def to_rational(value) -> Fraction:
    """Convert ``value`` to an exact :class:`Fraction`.

    Accepts ints, Fractions, Decimals, strings (``"3"``, ``"-0.25"``,
    ``"7/3"``) and floats whose shortest decimal spelling equals their binary
    value (``0.5`` is accepted, ``0.1`` is not).
    """
    if isinstance(value, bool):
        raise InputError(f"boolean is not a coordinate: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise InputError(f"non-finite coordinate: {value!r}")
        return Fraction(value)
    if isinstance(value, float) or type(value).__name__.startswith("float"):
        value = float(value)
        if not math.isfinite(value):
            raise InputError(f"non-finite coordinate: {value!r}")
        exact = Fraction(value)
        if exact != Fraction(Decimal(repr(value))):
            raise InexactInput(
                f"float {value!r} is not exactly representable; pass it as a string"
            )
        return exact
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                num, den = text.split("/")
                if int(den) == 0:
                    raise InputError(f"zero denominator in {value!r}")
                return Fraction(int(num), int(den))
            return Fraction(Decimal(text))
        except (ValueError, InvalidOperation) as exc:
            raise InputError(f"cannot parse coordinate {value!r}") from exc
    # numpy integer scalars and the like
    if hasattr(value, "__index__"):
        return Fraction(value.__index__())
    raise InputError(f"unsupported coordinate type {type(value).__name__}")


class Point2(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "Point2":
        return cls(to_rational(x), to_rational(y))

    def __repr__(self):
        return f"Point2({_fmt(self.x)}, {_fmt(self.y)})"


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def sqdist(p: Point2, q: Point2) -> Fraction:
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


class GeneratorSet:
    """Ordered, duplicate-free list of at least two generators."""

    __slots__ = ("points",)

    def __init__(self, points: Iterable):
        pts = tuple(p if isinstance(p, Point2) else Point2.of(*p) for p in points)
        if len(pts) < 2:
            raise InputError("a generator set needs at least two points")
        if len(set(pts)) != len(pts):
            dup = _duplicates(pts)
            raise CoincidentPoints(f"duplicate generators at indices {dup}")
        self.points = pts

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __eq__(self, other):
        return isinstance(other, GeneratorSet) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f"GeneratorSet({list(self.points)!r})"


def _duplicates(pts: Sequence[Point2]) -> list[tuple[int, int]]:
    return [(i, j) for i, j in combinations(range(len(pts)), 2) if pts[i] == pts[j]]


class Side(enum.Enum):
    CloserToFirst = -1
    OnBisector = 0
    CloserToSecond = 1


@dataclass(frozen=True)
class Bisector:
    """Perpendicular bisector of generators ``i < j`` as ``a*x + b*y + c = 0``.

    Coefficients are coprime integers; the form is negative at ``p_i``.
    """

    i: int
    j: int
    a: int
    b: int
    c: int

    def evaluate(self, p: Point2) -> Fraction:
        return self.a * p.x + self.b * p.y + self.c

    @property
    def pair(self) -> tuple[int, int]:
        return (self.i, self.j)

    @property
    def direction(self) -> tuple[int, int]:
        return (-self.b, self.a)

    @property
    def slope_key(self) -> tuple[int, int]:
        """Normal direction up to sign; equal keys mean parallel lines."""
        g = math.gcd(self.a, self.b)
        a, b = self.a // g, self.b // g
        if a < 0 or (a == 0 and b < 0):
            a, b = -a, -b
        return (a, b)

    @property
    def line_key(self) -> tuple[int, int, int]:
        """The line itself, independent of orientation."""
        g = math.gcd(self.a, self.b, self.c)
        a, b, c = self.a // g, self.b // g, self.c // g
        if a < 0 or (a == 0 and b < 0):
            a, b, c = -a, -b, -c
        return (a, b, c)


def perpendicular_bisector(p_i: Point2, p_j: Point2, i: int = 0, j: int = 1) -> Bisector:
    if p_i == p_j:
        raise CoincidentPoints(f"generators {i} and {j} coincide at {p_i!r}")
    a = 2 * (p_j.x - p_i.x)
    b = 2 * (p_j.y - p_i.y)
    c = (p_i.x * p_i.x + p_i.y * p_i.y) - (p_j.x * p_j.x + p_j.y * p_j.y)
    scale = math.lcm(a.denominator, b.denominator, c.denominator)
    ai, bi, ci = int(a * scale), int(b * scale), int(c * scale)
    g = math.gcd(ai, bi, ci)
    return Bisector(i, j, ai // g, bi // g, ci // g)


def bisectors_of(points: Sequence[Point2]) -> list[Bisector]:
    """All ``n(n-1)/2`` bisectors in lexicographic pair order."""
    return [
        perpendicular_bisector(points[i], points[j], i, j)
        for i, j in combinations(range(len(points)), 2)
    ]


def classify(p: Point2, b: Bisector) -> Side:
    v = b.evaluate(p)
    if v < 0:
        return Side.CloserToFirst
    if v > 0:
        return Side.CloserToSecond
    return Side.OnBisector


def intersect(b1: Bisector, b2: Bisector) -> Point2 | None:
    det = b1.a * b2.b - b2.a * b1.b
    if det == 0:
        if b1.line_key == b2.line_key:
            raise CoincidentLines(f"bisectors {b1.pair} and {b2.pair} coincide")
        return None
    x = Fraction(b1.b * b2.c - b2.b * b1.c, det)
    y = Fraction(b2.a * b1.c - b1.a * b2.c, det)
    return Point2(x, y)


def intersection_groups(bisectors: Sequence[Bisector]) -> dict[Point2, set[int]]:
    """Map every pairwise intersection point to the bisector indices through it.

    Parallel pairs are skipped; coincident pairs raise :class:`CoincidentLines`.
    """
    groups: dict[Point2, set[int]] = {}
    for s, t in combinations(range(len(bisectors)), 2):
        pt = intersect(bisectors[s], bisectors[t])
        if pt is None:
            continue
        members = groups.setdefault(pt, set())
        members.add(s)
        members.add(t)
    return groups


def is_triangle(pairs: Iterable[tuple[int, int]]) -> bool:
    pairs = list(pairs)
    if len(pairs) != 3:
        return False
    gens = {g for pr in pairs for g in pr}
    return len(gens) == 3


@dataclass(frozen=True)
class Violation:
    kind: str  # duplicate | parallel | coincident | concurrent
    generators: tuple[int, ...]
    bisectors: tuple[tuple[int, int], ...] = ()
    point: Point2 | None = None

    def describe(self) -> str:
        gens = ",".join(str(g) for g in self.generators)
        if self.kind == "duplicate":
            return f"duplicate generators {{{gens}}}"
        if self.kind == "parallel":
            return f"{len(self.bisectors)} parallel bisectors over generators {{{gens}}}"
        if self.kind == "coincident":
            return f"coincident bisectors {list(self.bisectors)}"
        return (
            f"{len(self.bisectors)} bisectors concurrent at "
            f"({_fmt(self.point.x)}, {_fmt(self.point.y)}) over generators {{{gens}}}"
        )

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "generators": list(self.generators),
            "bisectors": [list(p) for p in self.bisectors],
        }
        if self.point is not None:
            out["point"] = [_fmt(self.point.x), _fmt(self.point.y)]
        return out


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)
    parallel_pairs: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        # truthy when there is something to report, like a list of violations
        return bool(self.violations)

    def __len__(self):
        return len(self.violations)

    def summary(self) -> str:
        if not self.violations:
            return "general position"
        return "; ".join(v.describe() for v in self.violations)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [v.to_dict() for v in self.violations],
            "parallel_pairs": [[list(a), list(b)] for a, b in self.parallel_pairs],
        }


def validate_general_position(g) -> ValidationReport:
    """List every way ``g`` departs from general position.

    ``g`` may be a :class:`GeneratorSet` or any sequence of points (the latter
    so duplicates can be reported instead of raised). A lone pair of parallel
    bisectors is permitted and recorded in ``parallel_pairs``.
    """
    pts = tuple(p if isinstance(p, Point2) else Point2.of(*p) for p in g)
    violations: list[Violation] = []
    for i, j in _duplicates(pts):
        violations.append(Violation("duplicate", (i, j)))
    dup_free = [
        (i, j)
        for i, j in combinations(range(len(pts)), 2)
        if pts[i] != pts[j]
    ]
    bis = [perpendicular_bisector(pts[i], pts[j], i, j) for i, j in dup_free]

    by_line: dict[tuple, list[int]] = {}
    by_slope: dict[tuple, list[int]] = {}
    for s, b in enumerate(bis):
        by_line.setdefault(b.line_key, []).append(s)
        by_slope.setdefault(b.slope_key, []).append(s)

    coincident = set()
    for members in by_line.values():
        if len(members) > 1:
            coincident.update(members)
            violations.append(
                Violation(
                    "coincident",
                    _gens(bis, members),
                    tuple(bis[s].pair for s in members),
                )
            )
    parallel_pairs = []
    for members in by_slope.values():
        distinct_lines = {bis[s].line_key for s in members}
        if len(members) >= 3:
            violations.append(
                Violation("parallel", _gens(bis, members), tuple(bis[s].pair for s in members))
            )
        elif len(members) == 2 and len(distinct_lines) == 2:
            parallel_pairs.append((bis[members[0]].pair, bis[members[1]].pair))

    # one representative per distinct line for concurrency
    reps = [s for s in range(len(bis)) if s not in coincident or s == min(
        by_line[bis[s].line_key])]
    groups = intersection_groups([bis[s] for s in reps])
    for pt in sorted(groups, key=lambda p: (p.x, p.y)):
        # a coincident line counts once per bisector lying on it
        members = sorted(
            s for t in groups[pt] for s in by_line[bis[reps[t]].line_key]
        )
        pairs = [bis[s].pair for s in members]
        if len(members) == 2 and len({*pairs[0], *pairs[1]}) == 4:
            continue
        if is_triangle(pairs):
            continue
        if len(members) == 2:
            # two bisectors sharing a generator always meet a third; reaching
            # here means the third was coincident with another line
            continue
        violations.append(Violation("concurrent", _gens(bis, members), tuple(pairs), pt))
    return ValidationReport(tuple(violations), tuple(parallel_pairs))


def _gens(bis: Sequence[Bisector], members: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted({g for s in members for g in bis[s].pair}))


def as_generator_set(points) -> GeneratorSet:
    if isinstance(points, GeneratorSet):
        return points
    return GeneratorSet(points)
