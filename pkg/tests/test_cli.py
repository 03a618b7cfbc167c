import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from toricmld.cli import main

SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "docs" / "schema.json").read_text())
M3 = '{"dim":3,"factors":[{"gens":[[1,0,0],[0,1,0],[0,0,1]],"exp":"1"}]}'
CUSP = '{"dim":2,"factors":[{"gens":[[3,0],[0,2]],"exp":"1"}]}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def validate(doc, kind):
    jsonschema.validate(doc, {**SCHEMA, "$ref": f"#/$defs/{kind}"})
    jsonschema.validate(doc, SCHEMA)


def test_mld_example(capsys):
    code, out, _ = run(capsys, "mld", "--germ", "smooth3", "--ideal", M3)
    assert code == 0
    assert out == '{"value":"2","witness":[1,1,1],"certified":true}\n'
    validate(json.loads(out), "mld")


def test_tower_example(capsys):
    code, out, _ = run(capsys, "tower", "--w", "3,2")
    assert code == 0
    assert out == '{"tower":[[1,1],[2,1],[3,2]]}\n'
    validate(json.loads(out), "tower")


@pytest.mark.parametrize("argv,kind", [
    (["mld", "--ideal", M3, "--full"], "mld_full"),
    (["mld", "--germ", "1/2(1,1,1)"], "mld"),
    (["mld", "--ideal", CUSP, "--centre", "1"], "mld"),
    (["lct", "--ideal", CUSP], "lct"),
    (["threshold", "--ideal", CUSP, "--target", "1/2"], "threshold"),
    (["blowup", "--w", "2,1", "--ideal", CUSP], "blowup"),
    (["blowup", "--w", "1/2,1/2,1/2", "--germ", "1/2(1,1,1)"], "blowup"),
    (["tower", "--w", "5,3", "--ideal", CUSP], "tower"),
    (["tower", "--w", "5,3", "--full"], "tower"),
    (["surface-mld", "--ideal", CUSP], "surface"),
    (["canonize", "--ideal", M3, "--q", "1", "--epsilon", "1/10"], "canonize"),
    (["classify", "--w1", "2", "--w2", "1", "--poly", '{"x1*x3":1,"x2^3":1,"x2^2*x3":1}'], "classify"),
    (["classify", "--w1", "3", "--w2", "2", "--poly", '{"x1*x2":1,"x3^5":1}'], "classify"),
    (["classify", "--w1", "3", "--w2", "2"], "classify"),
    (["classify", "--w1", "2", "--w2", "1", "--half", "1/2"], "half"),
    (["verify-suite", "--seed", "1", "--count", "2", "--only", "anchors,classifier,algebra"], "suite"),
])
def test_reports_match_schema(capsys, argv, kind):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    validate(json.loads(out), kind)


def test_half_report_values(capsys):
    _, out, _ = run(capsys, "classify", "--w1", "2", "--w2", "1", "--half", "1/2")
    doc = json.loads(out)
    assert doc["forced_weights"] == [2, 1] and doc["chain_holds"]


def test_surface_report_is_consistent(capsys):
    _, out, _ = run(capsys, "surface-mld", "--ideal", CUSP)
    doc = json.loads(out)
    assert doc["rescale"] == "5/6" and doc["mld"] == "0"
    assert doc["mld_report"]["value"] == doc["mld"]


def test_malformed_json_reports_position(capsys):
    code, out, err = run(capsys, "mld", "--ideal", '{"dim":3,\n "factors": [}')
    assert code == 1 and out == ""
    doc = json.loads(err)
    validate(doc, "error")
    assert doc["error"] == "usage"
    assert doc["details"]["line"] == 2 and doc["details"]["column"] == 14
    assert doc["details"]["position"] == 23


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "tower")[0] == 1
    assert run(capsys, "blowup", "--w", "a,b")[0] == 1
    assert run(capsys, "verify-suite", "--only", "nope")[0] == 1


def test_math_errors_exit_two(capsys):
    code, out, err = run(capsys, "lct", "--ideal", CUSP, "--base", '{"dim":2,"factors":[{"gens":[[1,0]],"exp":"2"}]}')
    assert code == 2 and out == ""
    doc = json.loads(err)
    validate(doc, "error")
    assert doc["error"] == "not_lc"
    code, _, err = run(capsys, "classify", "--w1", "2", "--w2", "1", "--poly", '{"x2*x3":1}')
    assert code == 2 and json.loads(err)["error"] == "normal_form"
    assert run(capsys, "blowup", "--w", "2,4")[0] == 2


def test_out_and_dot_files(capsys, tmp_path):
    target = tmp_path / "report.json"
    dot = tmp_path / "tower.dot"
    code, out, _ = run(capsys, "tower", "--w", "3,2", "--out", str(target), "--dot", str(dot))
    assert code == 0 and out == ""
    assert json.loads(target.read_text()) == {"tower": [[1, 1], [2, 1], [3, 2]]}
    assert dot.read_text().startswith("digraph tower {")


def test_ideal_from_file(capsys, tmp_path):
    p = tmp_path / "ideal.json"
    p.write_text(M3)
    code, out, _ = run(capsys, "mld", "--ideal", str(p))
    assert code == 0 and json.loads(out)["value"] == "2"


def test_canonize_trace_file(capsys, tmp_path):
    p = tmp_path / "trace.json"
    code, _, _ = run(capsys, "canonize", "--ideal", '{"dim":3,"factors":[{"gens":[[3,0,0],[0,4,0],[0,0,7]],"exp":"1"}]}',
                     "--q", "61/84", "--epsilon", "1/20", "--trace", str(p))
    assert code == 0
    doc = json.loads(p.read_text())
    assert doc["trace"]["termination"]["process"] == "Process5"
    assert [s["q_i"] for s in doc["trace"]["steps"]] == sorted(s["q_i"] for s in doc["trace"]["steps"])


def test_box_limit_environment_variable(capsys, monkeypatch):
    ideal = '{"dim":3,"factors":[{"gens":[[6,0,0],[0,6,0],[0,3,1]],"exp":"1/2"}]}'
    _, out, _ = run(capsys, "mld", "--ideal", ideal, "--full")
    assert json.loads(out)["certificate"] == "polyhedral"
    monkeypatch.setenv("MLD_BOX_LIMIT", "2")
    _, out, _ = run(capsys, "mld", "--ideal", ideal, "--full")
    assert json.loads(out)["search_box_bound"] <= 2
    monkeypatch.setenv("MLD_BOX_LIMIT", "-3")
    assert run(capsys, "mld", "--ideal", ideal)[0] == 2


def test_deterministic_bytes():
    argv = [sys.executable, "-m", "toricmld", "verify-suite", "--seed", "7", "--count", "3",
            "--only", "oracle,canonize,classifier"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first


def test_module_entry_point_exit_code():
    res = subprocess.run([sys.executable, "-m", "toricmld", "mld", "--ideal", "{"], capture_output=True)
    assert res.returncode == 1
    assert json.loads(res.stderr)["error"] == "usage"


def test_non_primitive_weight_is_a_math_error(capsys):
    code, _, err = run(capsys, "blowup", "--w", "1,1,1", "--germ", "1/2(1,1,1)")
    assert code == 2 and json.loads(err)["error"] == "lattice"
