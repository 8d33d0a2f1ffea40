import io
import json
import math

import numpy as np
import pytest

from cosinelab import cli, reports
from cosinelab.families import Generator, Hamel, HamelSpec, ScalarCos, save_family
from cosinelab.zero_two import contraction_sequence


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, f in [
        ("sc3", ScalarCos(3)),
        ("sc1", ScalarCos(1)),
        ("sc2", ScalarCos(2)),
        ("zero", Generator(np.zeros((2, 2)))),
        ("hcos", Hamel()),
        ("hcosh", Hamel(HamelSpec(function="cosh"))),
    ]:
        paths[name] = str(tmp_path / f"{name}.json")
        save_family(paths[name], f)
    bad = tmp_path / "e.json"
    bad.write_text(json.dumps({"kind": "hamel", "irrational": "e"}))
    paths["bad"] = str(bad)
    return paths


SMALL = {"trials": {"algebra": 20, "chebyshev": 10, "sqrt_series": 20, "families": 5,
                    "half_angle": 20, "envelope": 5, "spectral": 5}}


def _config(tmp_path, **extra):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({**SMALL, **extra}))
    return str(path)


def test_verify_small_passes(tmp_path):
    code, text = run("verify", "--config", _config(tmp_path), "--reproducible", "--seed", "3")
    doc = json.loads(text)
    assert code == 0 and doc["passed"] and doc["schema_version"] == reports.SCHEMA_VERSION
    assert "timestamp" not in doc


def test_verify_zero_tolerance_fails(tmp_path):
    code, text = run("verify", "--config", _config(tmp_path), "--tol", "dalembert=0")
    assert code == 1
    assert "timestamp" in json.loads(text)


def test_verify_config_errors(tmp_path, files):
    assert run("verify", "--config", _config(tmp_path, suites=["family_files"]))[0] == 2
    cfg = _config(tmp_path, suites=["family_files"], family_files=[str(tmp_path / "missing.json")])
    assert run("verify", "--config", cfg)[0] == 2
    assert run("verify", "--config", _config(tmp_path, bogus=1))[0] == 2
    assert run("verify", "--tol", "nonsense=1")[0] == 2
    assert run("verify", "--config", str(tmp_path / "absent.json"))[0] == 2
    assert run("frobnicate")[0] == 2


def test_verify_family_files(tmp_path, files):
    cfg = _config(tmp_path, suites=["family_files"], family_files=[files["sc1"], files["hcosh"]])
    code, text = run("verify", "--config", cfg, "--format", "csv")
    assert code == 0
    assert text.splitlines()[0] == ",".join(reports.VERIFY_COLUMNS)


def test_verify_reproducible_bytes(tmp_path):
    cfg = _config(tmp_path)
    a = run("verify", "--config", cfg, "--reproducible", "--seed", "11")[1]
    b = run("verify", "--config", cfg, "--reproducible", "--seed", "11")[1]
    assert a == b


def test_seed_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("COSINE_LAB_SEED", "99")
    doc = json.loads(run("verify", "--config", _config(tmp_path), "--reproducible")[1])
    assert doc["seed"] == 99


def test_classify(files):
    for name, branch in [("sc3", "zero"), ("hcos", "two"), ("hcosh", "infinity")]:
        code, text = run("classify", files[name], "--reproducible")
        assert code == 0
        assert json.loads(text)["result"]["branch"] == branch
    assert run("classify", files["bad"])[0] == 2
    assert run("classify", "/nonexistent.json")[0] == 2


def test_classify_csv_columns(files):
    text = run("classify", files["sc3"], "--format", "csv")[1]
    assert text.splitlines()[0] == "branch,delta,sup"


def test_halve(files):
    doc = json.loads(run("halve", files["zero"], "--t0", "1.5", "--steps", "5")[1])
    assert all(s["deviation"] == 0 for s in doc["trace"]["steps"])
    doc = json.loads(run("halve", files["sc1"], "--t0", "1", "--steps", "10")[1])
    assert max(s["deviation"] for s in doc["trace"]["steps"]) <= 1e-8
    code, text = run("halve", files["sc2"], "--t0", repr(math.pi), "--steps", "4")
    doc = json.loads(text)
    assert code == 0
    assert doc["trace"]["steps"][0]["flagged"]
    assert doc["trace"]["steps"][1]["status"] == "precondition_violated"
    assert run("halve", files["hcos"])[0] == 2


def test_converge():
    code, text = run("converge", "--n", "30", "--reproducible")
    rows = json.loads(text)["rows"]
    assert code == 0
    assert rows[0]["u_n"] == 2 and rows[1]["u_n"] == 1
    assert all(abs(r["ratio"] - 0.25) <= 0.01 for r in rows[6:-1])
    assert rows[-1]["ratio"] == "nan"
    assert run("converge", "--n", "0")[0] == 2
    text = run("converge", "--n", "5", "--format", "text")[1]
    assert text.splitlines()[1].split() == ["n", "u_n", "ratio"]


def test_reports_serialization():
    doc = reports.document("x", {"v": [math.inf, -math.inf, math.nan, 1.5, 1 + 2j],
                                 "m": np.eye(2), "bad": np.full((2, 2), np.nan)})
    assert doc["v"] == ["inf", "-inf", "nan", 1.5, {"re": 1.0, "im": 2.0}]
    assert doc["m"]["dim"] == 2 and doc["bad"] is None
    reports.dumps_json(doc)  # strict JSON, no NaN tokens
    seq = contraction_sequence(3)
    assert reports.dumps_csv(reports.CONVERGE_COLUMNS, reports.converge_rows(seq)).splitlines()[1] == "0,2.0,0.5"
