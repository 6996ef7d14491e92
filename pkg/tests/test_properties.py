from math import comb

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from oacd.chroma import (
    ChromaticCode,
    ParticleKind,
    chrom_dist,
    classify_kind,
    code_dist,
    equi_base,
    equi_color,
    format_code,
    parse_code,
)
from oacd.topo import c2e, c2v, e2v_2I, e2v_3I, relate

SETTINGS = settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def cells(draw, n_min=3, n_max=8):
    n = draw(st.integers(n_min, n_max))
    perm = draw(st.permutations(range(n)))
    return ChromaticCode(2 * v for v in perm)


@st.composite
def edges(draw, n_min=3, n_max=8):
    n = draw(st.integers(n_min, n_max))
    z = draw(st.integers(0, n - 2))
    values = [2 * z + 1, 2 * z + 1] + [2 * v for v in range(n) if v not in (z, z + 1)]
    return ChromaticCode(draw(st.permutations(values)))


@st.composite
def particles(draw, n):
    cell = ChromaticCode(2 * v for v in draw(st.permutations(range(n))))
    pool = [cell, *c2e(cell), *c2v(cell)]
    return draw(st.sampled_from(pool))


@SETTINGS
@given(cells(), st.data())
def test_metric_axioms(a, data):
    n = len(a)
    b = ChromaticCode(2 * v for v in data.draw(st.permutations(range(n))))
    c = ChromaticCode(2 * v for v in data.draw(st.permutations(range(n))))
    assert chrom_dist(a, a) == 0 and code_dist(a, a) == 0
    assert chrom_dist(a, b) == chrom_dist(b, a)
    assert chrom_dist(a, c) <= chrom_dist(a, b) + chrom_dist(b, c)
    assert code_dist(a, c) <= code_dist(a, b) + code_dist(b, c)
    assert (chrom_dist(a, b) == 0) == (a == b)


@SETTINGS
@given(st.integers(3, 7).flatmap(particles), st.data())
def test_equi_color_implies_equi_base(a, data):
    b = ChromaticCode(data.draw(st.permutations(list(a))))
    assert equi_color(a, a) and equi_base(a, b)
    if equi_color(a, b):
        assert equi_base(a, b)


@SETTINGS
@given(edges())
def test_e2v_outputs_are_vertices(e):
    n = len(e)
    two, three = e2v_2I(e), e2v_3I(e)
    assert all(classify_kind(v) is ParticleKind.Vertex2I for v in two)
    assert all(classify_kind(v) is ParticleKind.Vertex3I for v in three)
    assert len(two) + len(three) in (n - 3, n - 2, n - 1)
    assert len(three) <= 2


@SETTINGS
@given(cells())
def test_c2e_c2v_sizes(c):
    n = len(c)
    es, vs = c2e(c), c2v(c)
    assert len(es) == n - 1
    assert all(classify_kind(e) is ParticleKind.Edge for e in es)
    kinds = [classify_kind(v) for v in vs]
    assert kinds.count(ParticleKind.Vertex3I) == n - 2
    assert kinds.count(ParticleKind.Vertex2I) == comb(n - 2, 2)


@SETTINGS
@given(st.integers(3, 6).flatmap(lambda n: st.tuples(particles(n), particles(n))))
def test_relate_is_symmetric(pair):
    a, b = pair
    r1, r2 = relate(a, b), relate(b, a)
    assert r1.relation is r2.relation
    assert set(r1.evidence) == set(r2.evidence)


@SETTINGS
@given(st.integers(2, 20).flatmap(lambda n: st.lists(st.integers(0, 2 * n - 2), min_size=n, max_size=n)))
def test_compact_round_trip(values):
    c = ChromaticCode(values)
    assert parse_code(format_code(c)) == c
