from __future__ import annotations

import json
import subprocess
import sys

import pytest

from cmtetra.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_cm_regular(capsys):
    code, out, _ = run(capsys, "eval", "cm", "1", "1", "1", "1", "1", "1")
    assert code == 0
    assert out.strip() == '{"cm":"2","realizable":true,"volume":null}'


def test_eval_heron(capsys):
    code, out, _ = run(capsys, "eval", "heron", "3", "4", "5")
    assert json.loads(out) == {"heron": "576", "area": "6"}


def test_eval_accepts_edges_flag(capsys):
    code, out, _ = run(capsys, "eval", "cm", "--edges", "2", "3", "3", "3", "3", "4")
    assert json.loads(out) == {"cm": "1024", "realizable": True, "volume": "8/3"}


def test_point_fixture(capsys):
    code, out, _ = run(capsys, "point", "--a", "3", "--b", "4", "--c", "5", "--x", "1,2,3,4")
    assert json.loads(out) == {"edges": ["3", "4", "7/5", "5", "8/5", "3"], "y": "672/25", "sign": -1}


def test_point_gaussian(capsys):
    code, out, _ = run(capsys, "point", "--x", "1,2,3,4", "--gaussian")
    assert json.loads(out)["y"] == "672/25*i"


def test_point_count_is_seeded(capsys):
    _, a, _ = run(capsys, "point", "--count", "5", "--seed", "7")
    _, b, _ = run(capsys, "point", "--count", "5", "--seed", "7")
    assert a == b and len(json.loads(a)) == 5


def test_descend(capsys):
    code, out, _ = run(capsys, "descend", "--edges", "2", "3", "3", "3", "3", "4", "--t", "3")
    assert json.loads(out)["y"] == "1568/103"


def test_heron(capsys):
    code, out, _ = run(capsys, "heron", "1/2", "--t", "1")
    data = json.loads(out)
    assert (data["a"], data["b"], data["c"]) == ("5/12", "1/4", "1/3")


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "3", "5", "4", "4", "5", "3")
    data = json.loads(out)
    assert data["cm"] == "0" and set(data["classes"].values()) == {1}


def test_search_includes_collinear_row(capsys):
    code, out, _ = run(capsys, "search", "--max-edge", "3", "--include-degenerate")
    assert code == 0
    assert out.splitlines()[0] == "d12,d13,d14,d23,d24,d34,y,volume,realizable,degenerate"
    assert "1,2,3,1,2,1,0,0,false,true" in out.splitlines()


def test_search_output_file(tmp_path, capsys):
    path = tmp_path / "hits.json"
    code, out, _ = run(capsys, "search", "--max-edge", "4", "--format", "json", "--output", str(path))
    assert code == 0 and out == ""
    assert isinstance(json.loads(path.read_text()), list)


def test_verify_points_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "points", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["failures"] == 0
    assert [v["check"] for v in data["verdicts"]][0] == "points.weddle_points"


@pytest.mark.parametrize("argv", [
    ["eval", "cm", "1", "2", "x", "1", "1", "1"],
    ["eval", "cm", "1.5", "1", "1", "1", "1", "1"],
    ["eval", "cm", "1", "1"],
    ["search", "--max-edge", "0"],
    ["search", "--max-edge", "3", "--bogus"],
    ["verify", "--suite", "nope"],
    ["point", "--c", "0", "--x", "1,2,3,4"],
    ["point", "--x", "1,1,1,1"],
    ["descend", "--edges", "1", "1", "1", "1", "1", "1"],
    ["classify", "1", "2", "3", "1", "2", "1"],
    ["heron", "1", "--t", "2"],
    ["verify", "--seed", "-1"],
    [],
])
def test_malformed_input_exits_2_with_one_line(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert len(err.strip().splitlines()) == 1


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "cmtetra", "eval", "cm", "1", "1", "1", "1", "1", "1"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout == '{"cm":"2","realizable":true,"volume":null}\n'
