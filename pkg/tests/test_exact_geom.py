from decimal import Decimal
from fractions import Fraction

import pytest

from oacd.exact_geom import (
    Bisector,
    GeneratorSet,
    Point2,
    Side,
    bisectors_of,
    classify,
    intersect,
    perpendicular_bisector,
    to_rational,
    validate_general_position,
)
from oacd.exceptions import CoincidentLines, CoincidentPoints, InexactInput, InputError


@pytest.mark.parametrize("raw, want", [
    (3, Fraction(3)),
    ("-0.25", Fraction(-1, 4)),
    ("7/3", Fraction(7, 3)),
    (Decimal("1.5"), Fraction(3, 2)),
    (0.5, Fraction(1, 2)),
    (Fraction(2, 6), Fraction(1, 3)),
])
def test_to_rational(raw, want):
    assert to_rational(raw) == want


@pytest.mark.parametrize("raw, exc", [
    (0.1, InexactInput),
    ("1/0", InputError),
    ("abc", InputError),
    (True, InputError),
    (float("nan"), InputError),
])
def test_to_rational_rejects(raw, exc):
    with pytest.raises(exc):
        to_rational(raw)


def test_bisector_of_unit_segment():
    b = perpendicular_bisector(Point2.of(0, 0), Point2.of(2, 0))
    assert (b.a, b.b, b.c) == (1, 0, -1)
    assert classify(Point2.of(0, 5), b) is Side.CloserToFirst
    assert classify(Point2.of(1, 7), b) is Side.OnBisector
    assert classify(Point2.of(3, 0), b) is Side.CloserToSecond


def test_bisector_negative_at_first_generator():
    p, q = Point2.of("1/3", -2), Point2.of(5, "7/2")
    b = perpendicular_bisector(p, q)
    assert b.evaluate(p) < 0 < b.evaluate(q)
    assert all(isinstance(v, int) for v in (b.a, b.b, b.c))


def test_coincident_generators_rejected():
    with pytest.raises(CoincidentPoints):
        perpendicular_bisector(Point2.of(1, 1), Point2.of(1, 1))
    with pytest.raises(CoincidentPoints):
        GeneratorSet([(0, 0), (1, 1), (0, 0)])


def test_intersect_triangle_circumcenter():
    bis = bisectors_of(GeneratorSet([(0, 0), (2, 0), (0, 2)]).points)
    assert intersect(bis[0], bis[1]) == Point2.of(1, 1)
    assert intersect(bis[0], bis[2]) == Point2.of(1, 1)


def test_intersect_parallel_and_coincident():
    a = Bisector(0, 1, 1, 0, -1)
    assert intersect(a, Bisector(2, 3, 1, 0, -5)) is None
    with pytest.raises(CoincidentLines):
        intersect(a, Bisector(2, 3, -2, 0, 2))


def test_general_position_ok():
    r = validate_general_position([(0, 0), (4, 1), (1, 5), (-3, 2)])
    assert r.ok and not r


def test_concyclic_square_reports_six_concurrent():
    r = validate_general_position([(1, 0), (0, 1), (-1, 0), (0, -1)])
    conc = [v for v in r.violations if v.kind == "concurrent"]
    assert len(conc) == 1
    assert len(conc[0].bisectors) == 6
    assert conc[0].point == Point2.of(0, 0)
    assert conc[0].generators == (0, 1, 2, 3)


def test_collinear_generators_give_three_parallel():
    r = validate_general_position([(0, 0), (1, 0), (3, 0)])
    assert [v.kind for v in r.violations] == ["parallel"]
    assert r.violations[0].generators == (0, 1, 2)


def test_duplicates_reported_not_raised():
    r = validate_general_position([(0, 0), (0, 0), (1, 2)])
    assert any(v.kind == "duplicate" and v.generators == (0, 1) for v in r.violations)


def test_single_parallel_pair_is_permitted():
    # p0p1 and p2p3 both horizontal segments -> one parallel pair of bisectors
    r = validate_general_position([(0, 0), (2, 0), (1, 5), (7, 5)])
    assert r.ok
    assert len(r.parallel_pairs) == 1


def test_report_serialises():
    r = validate_general_position([(1, 0), (0, 1), (-1, 0), (0, -1)])
    d = r.to_dict()
    assert d["ok"] is False
    assert {v["kind"] for v in d["violations"]} >= {"concurrent"}
    assert "concurrent" in r.summary()
