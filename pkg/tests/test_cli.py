import json

import pytest

from oacd.chroma import ChromaticCode
from oacd.cli import main, query_code


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def triangle(tmp_path):
    p = tmp_path / "tri.csv"
    p.write_text("x,y\n0,0\n4,1\n1,5\n")
    return str(p)


def test_build_json(capsys, triangle):
    code, out, _ = run(capsys, "build", "-i", triangle)
    doc = json.loads(out)
    assert code == 0
    assert doc["counts"] == {"cells": 6, "edges": 6, "vertices_3I": 1, "vertices_2I": 0}
    assert len(doc["particles"]) == 13


def test_build_json_input_and_output_file(capsys, tmp_path):
    src = tmp_path / "pts.json"
    src.write_text('[[0, 0], ["7/2", 1], [1.5, 5]]')
    dst = tmp_path / "out.json"
    assert run(capsys, "build", "-i", str(src), "-o", str(dst))[0] == 0
    assert len(json.loads(dst.read_text())["particles"]) == 13


def test_build_table(capsys, triangle):
    code, out, _ = run(capsys, "build", "-i", triangle, "--out", "table")
    assert code == 0 and "222" in out


def test_degenerate_input_exits_2(capsys, tmp_path):
    p = tmp_path / "sq.csv"
    p.write_text("1,0\n0,1\n-1,0\n0,-1\n")
    code, out, err = run(capsys, "build", "-i", str(p))
    assert code == 2
    assert json.loads(out)["report"]["ok"] is False
    assert "concurrent" in err


def test_duplicate_point_exits_2(capsys, tmp_path):
    p = tmp_path / "dup.csv"
    p.write_text("0,0\n4,1\n0,0\n")
    assert run(capsys, "build", "-i", str(p))[0] == 2


def test_json_decimals_read_exactly(capsys, tmp_path):
    p = tmp_path / "f.json"
    p.write_text("[[0.1, 0], [1, 1]]")
    # JSON decimals are read exactly, so 0.1 is accepted as 1/10
    assert run(capsys, "build", "-i", str(p))[0] == 0


def test_query_worked_example(capsys):
    code, out, _ = run(capsys, "query", "36A038", "25A058")
    doc = json.loads(out)
    assert code == 0
    assert doc["relation"] == "joint"
    assert doc["evidence"] == ["44A048"]
    assert (doc["delta"], doc["gamma"]) == ("2", 3)
    assert doc["vertex_kind"] == "vertex3I"


def test_query_natural_units_auto():
    assert query_code("012") == ChromaticCode([0, 2, 4])
    assert query_code("024") == ChromaticCode([0, 2, 4])
    assert query_code("012", "natural") == ChromaticCode([0, 2, 4])


def test_query_table(capsys):
    code, out, _ = run(capsys, "query", "012", "210", "--out", "table")
    assert code == 0 and out.startswith("relation  joint")


def test_matrix_single_cell(capsys):
    code, out, _ = run(capsys, "matrix", "024")
    doc = json.loads(out)
    assert code == 0
    assert doc["iM"] == [["0"]] and doc["aM"] == [[0]] and doc["connected"]


def test_matrix_hexagon(capsys):
    cells = ["024", "204", "402", "420", "240", "042"]
    doc = json.loads(run(capsys, "matrix", *cells)[1])
    assert all(sum(row) == 2 for row in doc["aM"])
    assert all(v == 1 for row in doc["rM"] for v in row)


def test_matrix_against(capsys):
    doc = json.loads(run(capsys, "matrix", "024", "204", "--against", "204")[1])
    assert doc["relation"]["relation"] == "contains"


def test_hidden_triangle_is_empty(capsys, triangle):
    code, out, _ = run(capsys, "hidden", "-i", triangle)
    assert code == 0 and json.loads(out) == []


def test_render(capsys, triangle, tmp_path):
    dst = tmp_path / "t.svg"
    assert run(capsys, "render", "-i", triangle, "-o", str(dst))[0] == 0
    assert dst.read_text().startswith("<svg")
    assert run(capsys, "render", "-i", triangle, "--bbox", "1,1,2,2")[0] == 2


def test_verify_is_byte_identical(capsys):
    args = ("verify", "--n-min", "3", "--n-max", "4", "--trials", "2", "--seed", "3")
    code_a, out_a, _ = run(capsys, *args)
    code_b, out_b, _ = run(capsys, *args)
    assert code_a == code_b == 0
    assert out_a == out_b
    assert json.loads(out_a)["ok"] is True


def test_verify_single_input(capsys, triangle):
    code, out, _ = run(capsys, "verify", "-i", triangle)
    assert code == 0 and json.loads(out)["meta"]["hidden_particles"] == 0
