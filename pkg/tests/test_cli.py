import json

import pytest

from linrel.cli import main


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return str(path)


@pytest.fixture
def r2_file(tmp_path):
    return write(tmp_path, "r2.json", {"dim": 2, "mode": "graph", "graph_basis": [[1, 0, 0, 0]]})


@pytest.fixture
def identity_file(tmp_path):
    return write(tmp_path, "id.json", {"dim": 2, "mode": "matrix", "matrix": [[1, 0], [0, 1]]})


def run_json(capsys, argv):
    code = main(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


def test_analyze_r2(capsys, r2_file):
    code, doc = run_json(capsys, ["analyze", r2_file])
    assert code == 0
    assert doc["schema"] == 1
    assert doc["report"]["maximal"] is False
    assert doc["report"]["criteria_agree"] is True
    assert doc["ni"]["certificate"] is False
    assert len(doc["gap_samples"]) == 6
    assert doc["dims"] == {"n": 2, "graph": 1, "dom": 1, "ran": 0, "A0": 0, "Astar0": 1}


def test_analyze_identity(capsys, identity_file):
    code, doc = run_json(capsys, ["analyze", identity_file])
    assert code == 0
    assert doc["report"]["maximal"] is True
    assert all(g["gap"] == 0.0 for g in doc["gap_samples"])


def test_analyze_eight_probes_in_high_dim(capsys, tmp_path):
    f = write(tmp_path, "i5.json", {"dim": 5, "mode": "matrix", "matrix": [[float(i == j) for j in range(5)] for i in range(5)]})
    _, doc = run_json(capsys, ["analyze", f])
    assert len(doc["gap_samples"]) == 8


def test_analyze_text(capsys, r2_file):
    assert main(["analyze", r2_file]) == 0
    out = capsys.readouterr().out
    assert "maximal" in out and "gap=0.5" in out


def test_analyze_bad_row(capsys, tmp_path):
    f = write(tmp_path, "bad.json", {"dim": 2, "mode": "graph", "graph_basis": [[1.0, 0.0, 0.0]]})
    assert main(["analyze", f]) == 2
    assert "graph_basis[0]" in capsys.readouterr().err


def test_analyze_invalid_json(capsys, tmp_path):
    f = write(tmp_path, "bad.json", "{oops")
    assert main(["analyze", f]) == 2


def test_analyze_missing_file(capsys, tmp_path):
    assert main(["analyze", str(tmp_path / "none.json")]) == 2


def test_analyze_tol_override(capsys, r2_file):
    code, _ = run_json(capsys, ["analyze", r2_file, "--tol-rank", "1e-6", "--tol-psd", "1e-7"])
    assert code == 0
    assert main(["analyze", r2_file, "--tol-psd", "1"]) == 2


def test_adjoint(capsys, r2_file):
    code, doc = run_json(capsys, ["adjoint", r2_file])
    assert code == 0
    assert doc["dims"]["graph"] == 3
    assert doc["adjoint"]["mode"] == "graph"


def test_decompose(capsys, identity_file, r2_file):
    code, doc = run_json(capsys, ["decompose", identity_file])
    assert code == 0 and doc["recompose"] is True
    code, doc = run_json(capsys, ["decompose", r2_file])
    assert code == 0 and doc["recompose"] is None


def test_battery_json(capsys):
    code, doc = run_json(capsys, ["battery", "--seed", "1", "--dim", "3", "--count", "3"])
    assert code == 0 and doc["ok"]


def test_battery_dim_zero(capsys):
    assert main(["battery", "--seed", "1", "--dim", "0", "--count", "3"]) == 2


def test_battery_requires_args(capsys):
    assert main(["battery", "--dim", "3"]) == 2


def test_battery_corrupted_tol_counterexamples_replay(capsys, tmp_path):
    out = tmp_path / "ce"
    argv = ["battery", "--seed", "3", "--dim", "3", "--count", "4", "--tol-psd", "1", "--unchecked-tol"]
    assert main(argv + ["--out-dir", str(out)]) == 1
    capsys.readouterr()
    files = sorted(out.iterdir())
    assert files
    for f in files:
        expected = json.loads(f.read_text())["meta"]["failed"]
        code, doc = run_json(capsys, ["analyze", str(f)])
        assert code == 1
        assert set(expected) <= set(doc["failed"])


def test_battery_rejects_out_of_range_tol_without_flag(capsys):
    assert main(["battery", "--seed", "1", "--dim", "2", "--count", "1", "--tol-psd", "1"]) == 2


def test_examples_divergence_shown(capsys):
    assert main(["examples", "shift:5"]) == 0
    assert "divergence:" in capsys.readouterr().out
    code, doc = run_json(capsys, ["examples", "gossez:4"])
    assert code == 0 and doc["divergence"] and doc["mismatches"] == {}


def test_examples_unknown(capsys):
    assert main(["examples", "nope"]) == 2


def test_no_command(capsys):
    assert main([]) == 2
