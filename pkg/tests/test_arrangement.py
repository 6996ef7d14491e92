import random
from itertools import permutations

import pytest

from oacd.arrangement import VertexKind, build_arrangement, enumerate_units, signs_at
from oacd.chroma import ChromaticCode, ParticleKind
from oacd.diagram import build_diagram
from oacd.exceptions import DegenerateInput
from oacd.verify import expected_counts, sample_generators

TRIANGLE = [(0, 0), (4, 1), (1, 5)]


def test_two_points():
    arr = build_arrangement([(0, 0), (2, 0)])
    assert (len(arr.vertices), len(arr.edges), len(arr.faces)) == (0, 1, 2)
    assert arr.euler() == 1


def test_triangle_structure():
    arr = build_arrangement(TRIANGLE)
    assert arr.counts() == {"cells": 6, "edges": 6, "vertices_3I": 1, "vertices_2I": 0}
    (v,) = arr.vertices
    assert v.kind is VertexKind.ThreeI
    assert len(v.star) == 6
    assert all(not f.bounded for f in arr.faces)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_counts_and_euler(n):
    g = sample_generators(n, random.Random(n))
    arr = build_arrangement(g)
    assert arr.counts() == expected_counts(n)
    assert arr.euler() == 1


def test_sign_vectors_match_point_evaluation():
    g = sample_generators(5, random.Random(7))
    d = build_diagram(g)
    for p in d:
        kind, _, idx = p.geom[0], None, int(p.geom[1:])
        pt = d.representative_point(p)
        assert signs_at(pt, d.bisectors) == {
            "v": d.arrangement.vertex_signs,
            "e": d.arrangement.edge_signs,
            "f": d.arrangement.face_signs,
        }[kind][idx]


def test_units_alternate_edges_and_faces():
    d = build_diagram(sample_generators(5, random.Random(3)))
    arr = d.arrangement
    for unit in enumerate_units(arr):
        deg = len(unit.edges)
        for m in range(deg):
            face = unit.faces[m]
            # faces[m] lies between edges[m] and edges[m+1]
            assert unit.edges[m] in arr.faces[face].edges
            assert unit.edges[(m + 1) % deg] in arr.faces[face].edges


def test_degenerate_input_raises_with_report():
    with pytest.raises(DegenerateInput) as info:
        build_arrangement([(1, 0), (0, 1), (-1, 0), (0, -1)])
    assert not info.value.report.ok


def test_parallel_pair_changes_counts_by_one_vertex():
    # one allowed parallel pair: the two bisectors never meet
    arr = build_arrangement([(0, 0), (2, 0), (1, 5), (7, 5)])
    want = expected_counts(4)
    got = arr.counts()
    assert got["vertices_2I"] == want["vertices_2I"] - 1
    assert got["edges"] == want["edges"] - 2
    assert got["cells"] == want["cells"] - 1
    assert arr.euler() == 1


def test_triangle_codes():
    d = build_diagram(TRIANGLE)
    assert {p.code for p in d.cells} == {
        ChromaticCode(2 * v for v in p) for p in permutations(range(3))
    }
    assert [p.code for p in d.of_kind(ParticleKind.Vertex3I)] == [ChromaticCode([2, 2, 2])]
