import json
import subprocess
import sys

import pytest

from lorhom3.cli import main

HEIS_DOC = {
    "dimension": 3,
    "basis": ["X'", "Z", "T"],
    "brackets": [{"on": ["Z", "T"], "result": {"X'": "1"}}],
    "metric": {"X',X'": "1", "Z,T": "1"},
}

SOL_SCALED_DOC = {
    "dimension": 3,
    "basis": ["X", "Z", "T"],
    "brackets": [
        {"on": ["T", "X"], "result": {"X": "1"}},
        {"on": ["T", "Z"], "result": {"Z": "-1"}},
    ],
    "metric": {"X,T": "5", "Z,Z": "5"},
}


def run_cli(args, capsys):
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


def test_catalog_list(capsys):
    code, out, _ = run_cli(["catalog", "list"], capsys)
    assert code == 0
    assert len(out.strip().splitlines()) == 11


def test_catalog_show_lorentz_sol_contains_connection(capsys):
    code, out, _ = run_cli(["catalog", "show", "lorentz_sol"], capsys)
    assert code == 0
    assert "nabla_Z T = 1 Z" in out
    assert "nabla_T T = -1 T" in out
    assert "nabla_Z Z = -1 X" in out


def test_catalog_show_unknown_exits_2(capsys):
    code, _, err = run_cli(["catalog", "show", "bogus"], capsys)
    assert code == 2
    assert "unknown" in err


def test_catalog_show_stub(capsys):
    code, out, _ = run_cli(["catalog", "show", "de_sitter_note"], capsys)
    assert code == 0
    assert "no compact quotient" in out or "compact" in out


def test_analyze_heis_doc(tmp_path, capsys):
    path = tmp_path / "heis.json"
    path.write_text(json.dumps(HEIS_DOC))
    code, out, _ = run_cli(["analyze", str(path)], capsys)
    assert code == 0
    assert "lorentz_heisenberg" in out


def test_analyze_malformed_rational_exits_3(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({
        "dimension": 3, "basis": ["a", "b", "c"], "brackets": [],
        "metric": {"a,a": "1/0"}}))
    code, _, err = run_cli(["analyze", str(path)], capsys)
    assert code == 3
    assert "denominator" in err


def test_analyze_float_metric_exits_3(tmp_path, capsys):
    path = tmp_path / "bad2.json"
    path.write_text(json.dumps({
        "dimension": 3, "basis": ["a", "b", "c"], "brackets": [],
        "metric": {"a,a": 0.5}}))
    code, _, err = run_cli(["analyze", str(path)], capsys)
    assert code == 3
    assert "float" in err


def test_analyze_scaled_sol_reports_witness(tmp_path, capsys):
    path = tmp_path / "sol.json"
    path.write_text(json.dumps(SOL_SCALED_DOC))
    code, out, _ = run_cli(["analyze", str(path), "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["geometry_class"] == "lorentz_sol"
    assert doc["normal_form"]["scale"] == "5"
    assert "witness" in doc["normal_form"]


MODEL_DOC = {
    "dimension": 4,
    "basis": ["X'", "Z", "T", "Y"],
    "brackets": [
        {"on": ["Z", "T"], "result": {"X'": "-1"}},
        {"on": ["Z", "Y"], "result": {"Z": "-1"}},
        {"on": ["T", "Y"], "result": {"T": "1"}},
    ],
    "metric": {"X',X'": "1", "Z,T": "1"},
    "model": {"isotropy": "Y"},
}


def test_analyze_model_document(tmp_path, capsys):
    path = tmp_path / "model.json"
    path.write_text(json.dumps(MODEL_DOC))
    code, out, _ = run_cli(["analyze", str(path), "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["geometry_class"] == "lorentz_heisenberg"
    assert "transverse_subalgebra" in doc


def test_analyze_non_lorentzian_exits_3(tmp_path, capsys):
    path = tmp_path / "riem.json"
    path.write_text(json.dumps({
        "dimension": 3, "basis": ["a", "b", "c"], "brackets": [],
        "metric": {"a,a": "1", "b,b": "1", "c,c": "1"}}))
    code, _, err = run_cli(["analyze", str(path)], capsys)
    assert code == 3
    assert "signature" in err


def test_analyze_jacobi_violation_cites_indices(tmp_path, capsys):
    path = tmp_path / "jac.json"
    path.write_text(json.dumps({
        "dimension": 3, "basis": ["a", "b", "c"],
        "brackets": [
            {"on": ["a", "b"], "result": {"c": "1"}},
            {"on": ["b", "c"], "result": {"a": "1"}},
            {"on": ["c", "a"], "result": {"a": "1"}},
        ],
        "metric": {"a,a": "1", "b,b": "1", "c,c": "-1"}}))
    code, _, err = run_cli(["analyze", str(path)], capsys)
    assert code == 3
    assert "(0, 1, 2" in err


def test_analyze_determinism(tmp_path, capsys):
    path = tmp_path / "heis.json"
    path.write_text(json.dumps(HEIS_DOC))
    _, out1, _ = run_cli(["analyze", str(path), "--format", "json"], capsys)
    _, out2, _ = run_cli(["analyze", str(path), "--format", "json"], capsys)
    assert out1 == out2


def test_parse_emit_round_trip(tmp_path):
    from lorhom3.inputdoc import emit_document, parse_document
    algebra, metric, model = parse_document(HEIS_DOC)
    doc = emit_document(algebra, metric, model)
    algebra2, metric2, _ = parse_document(doc)
    assert algebra2.constants_equal(algebra)
    assert metric2.gram == metric.gram


def test_model_command(capsys):
    code, out, _ = run_cli(["model", "lorentz_sol_4d", "--analyze"], capsys)
    assert code == 0
    assert "lorentz_sol" in out
    code, out, _ = run_cli(
        ["model", "unipotent_family(1,0,2)", "--analyze", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["analysis"]["geometry_class"] == "lorentz_sol"


def test_model_missing_params_exit_3(capsys):
    code, _, err = run_cli(["model", "unipotent_family", "--analyze"], capsys)
    assert code == 3


def test_geodesic_blowup(capsys):
    code, out, _ = run_cli(
        ["geodesic", "lorentz_sol", "--v0", "0,0,1", "--t-max", "2"], capsys)
    assert code == 0
    assert "blowup_detected" in out


def test_geodesic_requires_v0(capsys):
    code, _, err = run_cli(["geodesic", "minkowski"], capsys)
    assert code == 3


def test_geodesic_csv_and_plot(tmp_path, capsys):
    csv_path = tmp_path / "samples.csv"
    png_path = tmp_path / "figure.png"
    code, out, _ = run_cli(
        ["geodesic", "lorentz_heisenberg", "--v0", "1,1,0", "--t-max", "5",
         "--csv", str(csv_path), "--plot", str(png_path)], capsys)
    assert code == 0
    header = csv_path.read_text().splitlines()[0]
    assert header == "t,v_X',v_Z,v_T"
    assert png_path.stat().st_size > 1000


def test_geodesic_probe_json(capsys):
    code, out, _ = run_cli(
        ["geodesic", "lorentz_sol", "--probe", "--samples", "12",
         "--t-max", "5", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "incompleteness_witness"
    assert doc["provenance"]["seed"] == 7


def test_geodesic_seed_env_override(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("LORHOM3_SEED", "99")
    code, out, _ = run_cli(
        ["geodesic", "minkowski", "--probe", "--samples", "8",
         "--t-max", "1", "--format", "json"], capsys)
    assert code == 0
    assert json.loads(out)["provenance"]["seed"] == 99


def test_geodesic_numerical_failure_exits_4(capsys):
    code, _, err = run_cli(
        ["geodesic", "lorentz_sol", "--v0", "0,0,1", "--t-max", "2",
         "--escape-norm", "1e13"], capsys)
    assert code == 4
    assert "numerical failure" in err


def test_verify_quick(capsys):
    code, out, _ = run_cli(["verify-paper", "--quick"], capsys)
    assert code == 0
    assert out.count("PASS") == 12


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "lorhom3.cli", "catalog", "list"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "lorentz_sol" in proc.stdout
