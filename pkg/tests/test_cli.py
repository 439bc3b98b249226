import json
import subprocess
import sys

import pytest

from wabrep.cli import main, parse_window


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    run.stderr = captured.err
    return code, (json.loads(captured.out) if captured.out.strip() else None)


def write_specs(tmp_path, records):
    path = tmp_path / "specs.json"
    path.write_text(json.dumps({"schema": 1, "modules": records}))
    return str(path)


def test_parse_window():
    assert parse_window("3") == (3, 3)
    assert parse_window("3,2") == (3, 2)


@pytest.mark.parametrize("text", ["0", "x", "1,2,3", "-1"])
def test_parse_window_rejects(text):
    from wabrep.cli import InputError
    with pytest.raises(InputError):
        parse_window(text)


def test_verify_catalog(capsys):
    code, doc = run(capsys, "verify", "--window", "2")
    assert code == 0 and doc["passed"]
    assert doc["schema"] == 1 and doc["command"] == "verify"
    assert doc["window"] == {"K": 2, "M": 2}
    assert len(doc["modules"]) == 25


def test_verify_is_deterministic(capsys):
    _, first = run(capsys, "verify", "--window", "2")
    _, second = run(capsys, "verify", "--window", "2")
    assert first == second


def test_verify_jobs_match_serial(capsys, tmp_path):
    path = write_specs(tmp_path, [{"family": "A"}, {"family": "B"}, {"family": "A1"}])
    _, serial = run(capsys, "verify", "--window", "2", "--input", path)
    _, parallel = run(capsys, "verify", "--window", "2", "--input", path, "--jobs", "2")
    assert serial == parallel


def test_window_from_environment(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("WAB_WINDOW", "1,2")
    path = write_specs(tmp_path, [{"family": "A"}])
    _, doc = run(capsys, "verify", "--input", path)
    assert doc["window"] == {"K": 1, "M": 2}
    _, doc = run(capsys, "verify", "--input", path, "--window", "2")
    assert doc["window"] == {"K": 2, "M": 2}


def test_corrupted_fixture_fails(capsys, tmp_path):
    path = write_specs(tmp_path, [{"family": "B", "perturb": {
        "generator": "W", "index": 1, "source": [0, 0], "delta": "1", "target": [1, 1]}}])
    code, doc = run(capsys, "verify", "--window", "2", "--input", path)
    assert code == 1 and not doc["passed"]
    assert doc["modules"][0]["residuals"][0]["relation"] == "LW"


def test_max_residuals_limits_output(capsys, tmp_path):
    path = write_specs(tmp_path, [{"family": "B", "perturb": {
        "generator": "W", "index": 1, "source": [0, 0], "delta": "1", "target": [1, 1]}}])
    _, doc = run(capsys, "verify", "--window", "2", "--input", path, "--max-residuals", "1")
    assert len(doc["modules"][0]["residuals"]) == 1


@pytest.mark.parametrize("records", [
    [{"family": "A~", "params": {"a": "2"}}],
    [{"family": "Z9"}],
])
def test_bad_modules_are_input_errors(capsys, tmp_path, records):
    code, doc = run(capsys, "verify", "--input", write_specs(tmp_path, records))
    assert code == 2 and doc is None
    assert run.stderr.startswith("error:")


def test_missing_input_file(capsys):
    code, _ = run(capsys, "verify", "--input", "/nonexistent.json")
    assert code == 2


def test_bad_set(capsys):
    code, _ = run(capsys, "verify", "--set", "mu")
    assert code == 2


def test_set_override(capsys, tmp_path):
    path = write_specs(tmp_path, [{"family": "A"}])
    code, doc = run(capsys, "verify", "--window", "1", "--input", path, "--set", "mu=1/2")
    assert code == 0


def test_out_file(capsys, tmp_path):
    out = tmp_path / "report.json"
    code, doc = run(capsys, "dual", "A", "--window", "2", "--out", str(out))
    assert code == 0 and doc is None
    assert json.loads(out.read_text())["command"] == "dual"


def test_twist_commands(capsys):
    code, doc = run(capsys, "twist", "A3", "--window", "2")
    assert code == 0
    code, doc = run(capsys, "twist", "A3", "--window", "2", "--literal")
    assert code == 1
    code, _ = run(capsys, "twist", "VirA'", "--window", "2")
    assert code == 2


def test_solve_cases(capsys):
    code, doc = run(capsys, "solve-cases", "--window", "1", "--case", "two_layer.1",
                    "--case", "three_layer.4")
    assert code == 0 and [c["name"] for c in doc["cases"]] == ["two_layer.1", "three_layer.4"]
    code, doc = run(capsys, "solve-cases", "--list", "--b", "2")
    assert code == 0 and all(c["bindings"]["b"] == "2" for c in doc["cases"])
    code, _ = run(capsys, "solve-cases", "--case", "nope")
    assert code == 2


def test_classify_small_window(capsys):
    code, doc = run(capsys, "classify", "--window", "1", "--first-only")
    assert code == 0 and doc["passed"]
    names = {r["name"] for r in doc["printed_discrepancies"]}
    assert any("printed" in n for n in names)
    assert not all(r["passed"] for r in doc["printed_discrepancies"])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wabrep", "dual", "VirA'", "--window", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["passed"]
