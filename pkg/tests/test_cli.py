import json
import subprocess
import sys

import jsonschema
import pytest

from ljcert.cli import main
from ljcert.report import load_schema, payload_without_timing


def run(argv, tmp_path, name="out.json"):
    out = tmp_path / name
    code = main(argv + ["--output", str(out)])
    return code, out


def validate(path):
    doc = json.loads(path.read_text())
    jsonschema.validate(doc, load_schema())
    return doc


def test_zeta_command(tmp_path):
    code, out = run(["zeta", "--x", "0", "--y", "1", "--s", "6", "--tol", "1e-8"], tmp_path)
    assert code == 0
    doc = validate(out)
    assert doc["result"]["summary"].startswith("4.6589")
    assert set(doc) == {"schema_version", "command", "config", "result", "paper_comparison", "timing"}


def test_energy_and_optimal_volume(tmp_path):
    code, out = run(["optimal-volume", "--alpha", "12", "--beta", "6", "--x", "0.5", "--y", "0.8660254"], tmp_path)
    assert code == 0
    assert validate(out)["result"]["V"] == pytest.approx(1.07, abs=5e-3)
    code, out = run(["energy", "--alpha", "12", "--beta", "6", "--x", "0", "--y", "1", "--V", "1.1"], tmp_path)
    assert code == 0
    assert validate(out)["result"]["energy"] < 0


@pytest.mark.parametrize(
    "argv",
    [
        ["certify", "--alpha", "6", "--beta", "12"],
        ["certify", "--alpha", "12", "--beta", "6", "--delta", "0.03"],
        ["certify", "--alpha", "12"],
        ["zeta", "--x", "0", "--y", "-1", "--s", "6"],
        ["zeta", "--x", "0", "--y", "1", "--s", "2"],
        ["scan", "--functional", "F", "--delta", "0.05"],
        ["energy", "--alpha", "12", "--beta", "6", "--a", "-1", "--x", "0", "--y", "1"],
    ],
)
def test_config_errors_exit_2(argv, tmp_path, capsys):
    assert main(argv) == 2


def test_computation_error_exit_3(tmp_path):
    assert main(["zeta", "--x", "0", "--y", "1", "--s", "2.5", "--tol", "1e-12"]) == 3


def test_verdict_false_exit_1(tmp_path):
    argv = ["certify", "--alpha", "24", "--beta", "6", "--margin", "1000", "--max-depth", "0",
            "--ball-samples", "100", "--workers", "1"]
    code, out = run(argv, tmp_path)
    assert code == 1
    doc = validate(out)
    assert doc["result"]["verdict"] is False and doc["result"]["details"]["failed_cells"]


def test_paper_mode_certify(tmp_path):
    argv = ["certify", "--alpha", "24", "--beta", "6", "--mode", "paper", "--delta", "0.05",
            "--n", "20", "--m", "0", "--workers", "1"]
    code, out = run(argv, tmp_path)
    assert code == 0
    doc = validate(out)
    cmp = doc["paper_comparison"]
    assert cmp["M_flag"] == "nonmatching-as-printed"
    assert cmp["M_published"] == 33
    assert doc["result"]["details"]["M_literal"] > 33


def test_scan_csv(tmp_path):
    out = tmp_path / "f.csv"
    code = main(["scan", "--functional", "F", "--s", "6", "--delta", "0.05", "--y-max", "1.2", "--output", str(out)])
    assert code == 0
    raw = out.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode("utf-8").splitlines()
    assert lines[0] == "x,y,value"
    assert len(lines) - 1 == 11 * 7
    float(lines[1].split(",")[2])


def test_scan_json_argmin(tmp_path):
    code, out = run(["scan", "--functional", "F", "--s", "6", "--delta", "0.05", "--y-max", "1.2",
                     "--format", "json"], tmp_path)
    assert code == 0
    assert validate(out)["result"]["argmin"] == [0.5, 0.9]


def test_table1_without_adaptive(tmp_path):
    code, out = run(["table1", "--no-adaptive"], tmp_path)
    assert code == 0
    doc = validate(out)
    got = {(r["alpha"], r["beta"]): r["y_bar"] for r in doc["result"]["rows"]}
    assert got[(12, 6)] == "7.52" and got[(14, 6)] == "5.23"
    flags = {(c["alpha"], c["beta"]): c["M_flag"] for c in doc["paper_comparison"]}
    assert set(flags.values()) == {"nonmatching-as-printed"}


def test_workers_env_and_determinism(tmp_path, monkeypatch):
    argv = ["certify", "--alpha", "24", "--beta", "6", "--mode", "paper", "--delta", "0.05", "--n", "20", "--m", "33"]
    texts = []
    for w in ("1", "3"):
        monkeypatch.setenv("LJCERT_WORKERS", w)
        _, out = run(argv, tmp_path, f"r{w}.json")
        doc = json.loads(out.read_text())
        assert doc["timing"]["workers"] == int(w)
        texts.append(payload_without_timing(out.read_text()))
    assert texts[0] == texts[1]


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "ljcert", "zeta", "--x", "0", "--y", "1", "--s", "12"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["result"]["mid"] == pytest.approx(4.0640, abs=1e-4)
