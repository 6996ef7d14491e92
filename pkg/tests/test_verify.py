import random

from oacd.chroma import ChromaticCode
from oacd.diagram import build_diagram
from oacd.exact_geom import Point2
from oacd.verify import (
    check_counts,
    expected_counts,
    hidden_particles,
    rank_code_at,
    run_suite,
    sample_generators,
    verify_diagram,
)

TRIANGLE = [(0, 0), (4, 1), (1, 5)]


def test_rank_code_at():
    g = [Point2.of(*p) for p in TRIANGLE]
    assert rank_code_at(Point2.of(0, 0), g) == ChromaticCode([4, 2, 0])
    # circumcenter is equidistant from all three
    d = build_diagram(TRIANGLE)
    (v,) = d.vertices
    assert rank_code_at(d.representative_point(v), g) == ChromaticCode([2, 2, 2])


def test_expected_counts_small():
    assert expected_counts(2) == {"cells": 2, "edges": 1, "vertices_3I": 0, "vertices_2I": 0}
    assert expected_counts(3) == {"cells": 6, "edges": 6, "vertices_3I": 1, "vertices_2I": 0}
    assert expected_counts(4)["vertices_2I"] == 3


def test_no_hidden_particles_for_small_n():
    assert hidden_particles([(0, 0), (2, 1)]) == []
    assert hidden_particles(TRIANGLE) == []


def test_hidden_candidates_are_unrealised():
    d = build_diagram(sample_generators(6, random.Random(1)))
    for hp in hidden_particles(d):
        assert hp.code not in d
        assert set(hp.provenance) <= {"C2E", "C2V"}


def test_sampler_is_seeded_and_strict():
    a = sample_generators(6, random.Random("x"))
    b = sample_generators(6, random.Random("x"))
    assert a.points == b.points
    assert verify_diagram(build_diagram(a), topology=False).ok


def test_counterexample_carries_generators():
    d = build_diagram(TRIANGLE)
    d.arrangement.faces.pop()  # corrupt on purpose
    r = check_counts(d)
    assert not r.ok
    bad = [c for c in r.checks if c.failures]
    assert bad and "generators" in bad[0].counterexample


def test_suite_json_is_deterministic():
    a = run_suite(3, 4, trials=2, seed=5, cluster_samples=3)
    b = run_suite(3, 4, trials=2, seed=5, cluster_samples=3)
    assert a.ok
    assert a.to_json(timing=False) == b.to_json(timing=False)
    assert "seconds" not in a.to_json(timing=False)
