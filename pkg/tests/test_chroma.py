import pytest

from oacd.chroma import (
    ChromaticCode,
    Complex,
    ParticleKind,
    base,
    chrom_dist,
    classify_kind,
    code_dist,
    code_from_signs,
    count_components,
    equi_base,
    equi_color,
    expected_bases,
    format_code,
    format_components,
    format_half,
    parse_code,
)
from oacd.exceptions import BadDigit, LengthMismatch, NotAParticle


def h(*c):
    return ChromaticCode.from_components(c)


def test_code_from_signs_n2():
    pairs = [(0, 1)]
    assert code_from_signs([-1], pairs, 2) == h(1, 0)
    assert code_from_signs([1], pairs, 2) == h(0, 1)
    assert code_from_signs([0], pairs, 2) == h("1/2", "1/2")


def test_compact_round_trip():
    c = h(0, "7/2", 5, 1, 2, "7/2")
    assert format_code(c) == "07A247"
    assert parse_code("07a247") == c
    assert format_components(c) == "(0, 7/2, 5, 1, 2, 7/2)"


def test_wide_codes_use_list_form():
    c = ChromaticCode([40, 0, 2])
    assert format_code(c) == "d:40,0,2"
    assert parse_code("d:40,0,2") == c


def test_parse_errors():
    with pytest.raises(BadDigit):
        parse_code("01$")
    with pytest.raises(LengthMismatch):
        parse_code("024", n=4)


def test_distances_in_doubled_units():
    a, b = parse_code("36A038"), parse_code("25A058")
    assert chrom_dist(a, b) == 4
    assert code_dist(a, b) == 3
    assert format_half(chrom_dist(h(0, 1, 2), h("1/2", "1/2", 2))) == "1"
    assert format_half(3) == "1.5"


def test_bases_and_equalities():
    assert base(h(2, 0, 1)) == (0, 2, 4)
    assert equi_base(h(0, 1, 2), h(2, 1, 0))
    assert not equi_color(h(0, 1, 2), h(2, 1, 0))
    assert count_components(h("1/2", "1/2", 2), "1/2") == 2


@pytest.mark.parametrize("code, kind", [
    ("024", ParticleKind.Cell),
    ("114", ParticleKind.Edge),
    ("222", ParticleKind.Vertex3I),
    ("17A147", ParticleKind.Vertex2I),
    ("488028", ParticleKind.Vertex3I),
])
def test_classify(code, kind):
    assert classify_kind(code) is kind


@pytest.mark.parametrize("code", ["012", "0228", "113", "2244"])
def test_classify_rejects(code):
    with pytest.raises(NotAParticle):
        classify_kind(code)


def test_expected_base_counts():
    n = 6
    assert len(expected_bases(n, ParticleKind.Cell)) == 1
    assert len(expected_bases(n, ParticleKind.Edge)) == n - 1
    assert len(expected_bases(n, ParticleKind.Vertex3I)) == n - 2
    assert len(expected_bases(n, ParticleKind.Vertex2I)) == sum(
        n - 1 - (z1 + 2) for z1 in range(n - 3))


def test_complex_sums_members():
    cx = Complex.of(["024", "204"])
    assert cx.code == ChromaticCode([2, 2, 8])
    assert cx.is_cluster
    assert not Complex.of(["024", "114"]).is_cluster
