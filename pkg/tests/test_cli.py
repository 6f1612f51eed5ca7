import csv
import io
import json

import numpy as np
import pytest

from swapcorr.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_correlations_family(capsys):
    code, out, _ = run(capsys, "correlations", "--family", "werner", "--p", "0.5")
    doc = json.loads(out)
    assert code == 0
    assert doc["B"] == 0 and doc["C"] == pytest.approx(0.25) and doc["Omega"] == pytest.approx(0.5946, abs=1e-4)
    code, out, _ = run(capsys, "correlations", "--family", "bell", "--n", "0")
    assert np.allclose([json.loads(out)[k] for k in ("B", "BF3", "D", "C", "Omega")], 1)
    code, out, _ = run(capsys, "correlations", "--family", "werner:p=0.9", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][:5] == ["B", "BF3", "D", "C", "Omega"]
    assert float(rows[1][0]) == pytest.approx(0.62)


def test_state_file_and_errors(capsys, tmp_path):
    f = tmp_path / "state.json"
    f.write_text(json.dumps({"d": 2, "rho": [[[0.25, 0]] * 4 for _ in range(4)]}))
    code, out, _ = run(capsys, "correlations", "--state", str(f))
    assert code == 0 and json.loads(out)["Omega"] == 0
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "correlations", "--state", str(bad))
    assert code == 2 and "invalid JSON" in err
    f.write_text(json.dumps({"d": 2, "rho": np.eye(4).tolist()}))
    code, _, err = run(capsys, "correlations", "--state", str(f))
    assert code == 2
    code, _, _ = run(capsys, "correlations", "--family", "unknown")
    assert code == 2


def test_swap_and_chain(capsys, tmp_path):
    code, out, _ = run(capsys, "swap", "--ab", "bell", "--cd", "bell", "--effect", "0")
    doc = json.loads(out)
    assert code == 0 and doc["probability"] == pytest.approx(0.25)
    assert np.allclose(doc["R_AD"], np.diag([1, -1, -1, -1]))
    f = tmp_path / "chain.json"
    f.write_text(json.dumps({"sources": [{"bell": 0}] * 3, "measurements": [{"bell": 0}, {"bell": 0}]}))
    code, out, _ = run(capsys, "chain", "--state", str(f))
    doc = json.loads(out)
    assert code == 0 and doc["N"] == 3 and doc["predicted_obesity"] == pytest.approx(1)


def test_pathways_csv(capsys, tmp_path):
    out = tmp_path / "scan.csv"
    assert main(["pathways", "--p", "0.9", "--steps", "100", "--out", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 500
    assert {r["variant"] for r in rows} == {"initial", "filtered", "swapped", "sf", "fs"}
    again = tmp_path / "again.csv"
    assert main(["pathways", "--p", "0.9", "--steps", "100", "--out", str(again)]) == 0
    assert out.read_bytes() == again.read_bytes()
    code, text, _ = run(capsys, "pathways", "--steps", "2")
    thetas = {r["theta"] for r in csv.DictReader(io.StringIO(text))}
    assert thetas == {"0", "%.17g" % (np.pi / 4)}


def test_montecarlo(capsys, tmp_path):
    out = tmp_path / "mc.csv"
    code, text, _ = run(capsys, "montecarlo", "--ensemble", "x_form", "--n", "1", "--seed", "7", "--out", str(out))
    assert code == 0
    summary = json.loads(text)
    assert summary["samples"] == 1
    first = out.read_text()
    run(capsys, "montecarlo", "--ensemble", "x_form", "--n", "1", "--seed", "7", "--out", str(out))
    assert out.read_text() == first and len(first.splitlines()) == 2
    code, text, _ = run(capsys, "montecarlo", "--ensemble", "general", "--n", "300")
    assert code == 0 and list(json.loads(text)["measures"]) == ["Omega"]


def test_gamma_scan(capsys):
    code, text, _ = run(capsys, "gamma-scan", "--alpha", "0.4", "--steps", "3")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == 0
    assert [float(r["rho22"]) for r in rows] == pytest.approx([0, 0.2, 0.4])
    for r in rows:
        assert float(r["gamma_fs"]) == pytest.approx(float(r["gamma_sf_1"]), rel=1e-12)
    code, text, _ = run(capsys, "gamma-scan", "--alpha", "0.8", "--steps", "50")
    assert code == 0
    assert all(r["status"] == "ok" for r in csv.DictReader(io.StringIO(text)))
    code, _, _ = run(capsys, "gamma-scan", "--alpha", "1.5")
    assert code == 2


def test_verify(capsys):
    code, text, _ = run(capsys, "verify", "--n", "20")
    assert code == 0 and json.loads(text)["passed"]
    code, text, _ = run(capsys, "verify", "--n", "0")
    doc = json.loads(text)
    assert code == 0 and list(doc["checks"]) == ["pauli_trace_identities"]
    code, _, err = run(capsys, "verify", "--n", "5", "--inject-fault", "obesity_prediction")
    assert code == 1 and "obesity_prediction" in err
