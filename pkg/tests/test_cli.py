import json
import math
import subprocess
import sys

import pytest

from gch.cli import main

OSC_SPECTRUM = ["spectrum", "--system", "oscillator", "--coupling", "2", "--l", "0",
                "--i-max", "0", "--beta-max", "3"]


def run_to_file(tmp_path, name, argv):
    out = tmp_path / name
    code = main(argv + ["--output", str(out)])
    return code, out.read_bytes()


def test_eval_header_and_prefactor_row(tmp_path, capsys):
    code = main(["eval", "--mu", "2", "--epsilon", "0", "--nu", "1", "--omega-cap", "2",
                 "--x-start", "0", "--x-stop", "0", "--x-count", "1"])
    captured = capsys.readouterr().out
    lines = captured.strip().split("\n")
    assert code == 0
    assert lines[0] == "x,value,terms_used,est_error,converged"
    assert lines[1].split(",")[1] == repr(math.sqrt(math.pi))


def test_eval_deterministic(tmp_path):
    argv = ["eval", "--mu", "-1", "--epsilon", "0.4", "--nu", "0.5", "--omega-cap", "0.7",
            "--omega", "1.2", "--x-start", "0.1", "--x-stop", "1.0", "--x-count", "7"]
    code1, b1 = run_to_file(tmp_path, "a.csv", argv)
    code2, b2 = run_to_file(tmp_path, "b.csv", argv)
    assert code1 == code2 == 0
    assert b1 == b2


def test_eval_deterministic_subprocess(tmp_path):
    argv = [sys.executable, "-m", "gch.cli", "eval", "--mu", "2", "--epsilon", "1",
            "--nu", "1.5", "--omega-cap", "3", "--omega", "0.25",
            "--x-start", "0", "--x-stop", "1", "--x-count", "5"]
    r1 = subprocess.run(argv, capture_output=True)
    r2 = subprocess.run(argv, capture_output=True)
    assert r1.returncode == 0
    assert r1.stdout == r2.stdout


def test_eval_kind_restriction_exit2(capsys):
    code = main(["eval", "--mu", "1", "--nu", "-1", "--omega-cap", "1", "--x-count", "1"])
    assert code == 2
    err = capsys.readouterr().err
    assert "first kind requires nu not in {0, -1, -2, ...}" in err


def test_eval_poly_variant(tmp_path):
    # terminating Omega: beta_0 = 1 at mu = 0.5, Omega = -1
    code, body = run_to_file(tmp_path, "p.csv", [
        "eval", "--mu", "0.5", "--epsilon", "0.3", "--nu", "1.5", "--omega-cap", "-1",
        "--variant", "poly", "--x-start", "0.2", "--x-stop", "0.8", "--x-count", "3"])
    assert code == 0
    assert body.decode().startswith("x,value,terms_used,est_error,converged\n")


def test_eval_json_roundtrip(tmp_path):
    code, body = run_to_file(tmp_path, "out.json", [
        "eval", "--mu", "2", "--epsilon", "1", "--nu", "1.5", "--omega-cap", "3",
        "--omega", "0.25", "--x-start", "0", "--x-stop", "1", "--x-count", "5",
        "--format", "json"])
    assert code == 0
    text = body.decode()
    doc = json.loads(text)
    assert json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n" == text
    assert [sorted(r) for r in doc["rows"]][0] == ["converged", "est_error", "terms_used", "value", "x"]


def test_spectrum_oscillator_ladder(capsys):
    code = main(OSC_SPECTRUM)
    out = capsys.readouterr().out.strip().split("\n")
    assert code == 0
    assert out[0] == "i,beta,eigenvalue"
    assert [row.split(",")[2] for row in out[1:]] == ["1.0", "3.0", "5.0", "7.0"]


def test_spectrum_qqbar_sorted(capsys):
    code = main(["spectrum", "--system", "qqbar", "--mass", "0", "--b-slope", "1",
                 "--l", "0", "--i-max", "1", "--beta-max", "2"])
    out = capsys.readouterr().out.strip().split("\n")
    assert code == 0
    values = [float(r.split(",")[2]) for r in out[1:]]
    assert values == [6.0, 10.0, 14.0, 18.0, 22.0, 26.0]
    assert values == sorted(values)


def test_spectrum_degenerate_coupling_exit2(capsys):
    code = main(["spectrum", "--system", "confinement", "--pot-a", "1", "--pot-b", "0",
                 "--pot-c", "1", "--mass", "0.5", "--l", "0"])
    assert code == 2
    assert "beta_F = 0" in capsys.readouterr().err


def test_wavefunction_rows(tmp_path):
    code, body = run_to_file(tmp_path, "w.csv", [
        "wavefunction", "--system", "oscillator", "--coupling", "2", "--l", "0",
        "--state-i", "0", "--state-beta", "1",
        "--x-start", "0.1", "--x-stop", "2.0", "--x-count", "4"])
    assert code == 0
    lines = body.decode().strip().split("\n")
    assert lines[0] == "r,value,converged"
    assert len(lines) == 5


def test_verify_default_grid_exits_zero(tmp_path, capsys):
    code = main(["verify", "--output", str(tmp_path / "v.csv")])
    assert code == 0
    assert "PASS" in capsys.readouterr().err
    header = (tmp_path / "v.csv").read_text().split("\n")[0]
    assert header == "mu,epsilon,nu,omega_cap,omega,x,kind,rel_err,rel_residual,status"


def test_verify_unattainable_tolerance_exits_one(tmp_path, capsys):
    code = main(["verify", "--tolerance", "1e-15", "--output", str(tmp_path / "v.csv")])
    assert code == 1
    assert "FAIL" in capsys.readouterr().err


def test_verify_empty_grid_exits_two(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"grid": {"x": []}}))
    code = main(["verify", "--config", str(cfg)])
    assert code == 2
    assert "empty" in capsys.readouterr().err


def test_verify_config_grid_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"grid": {
        "mu": [-1.0], "eps": [0.5], "nu": [0.5], "omega_cap": [1.0],
        "omega": [0.25], "x": [0.3, 0.9], "kinds": ["first"]}}))
    code = main(["verify", "--config", str(cfg), "--output", str(tmp_path / "v.csv")])
    assert code == 0
    lines = (tmp_path / "v.csv").read_text().strip().split("\n")
    assert len(lines) == 3  # header + 2 points
    assert all(line.endswith("ok") for line in lines[1:])


def test_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "mu": 2.0, "epsilon": 0.0, "nu": 1.0, "omega_cap": 2.0,
        "x_start": 0.0, "x_stop": 0.0, "x_count": 1}))
    code = main(["eval", "--config", str(cfg)])
    out1 = capsys.readouterr().out
    assert code == 0
    assert out1.strip().split("\n")[1].split(",")[1] == repr(math.sqrt(math.pi))
    # flag overrides the config x grid
    code = main(["eval", "--config", str(cfg), "--x-count", "3", "--x-stop", "1.0"])
    out2 = capsys.readouterr().out
    assert code == 0
    assert len(out2.strip().split("\n")) == 4


def test_bad_grid_exit2(capsys):
    code = main(["eval", "--mu", "1", "--nu", "1.5", "--omega-cap", "1",
                 "--x-start", "2", "--x-stop", "1", "--x-count", "3"])
    assert code == 2
    assert "x-start" in capsys.readouterr().err


def test_missing_required_exit2(capsys):
    code = main(["eval", "--nu", "1.5", "--omega-cap", "1", "--x-count", "1"])
    assert code == 2
    assert "--mu" in capsys.readouterr().err


def test_asymptote_values(capsys):
    code = main(["asymptote", "--regime", "small-mu", "--epsilon", "1",
                 "--x-start", "1", "--x-stop", "1", "--x-count", "1"])
    out = capsys.readouterr().out.strip().split("\n")
    assert code == 0
    assert out[0] == "x,value"
    assert float(out[1].split(",")[1]) == pytest.approx(math.exp(-1.0) - 1.0)


def test_second_kind_poly_variant(capsys):
    # psi_0 = 1 ladder: Omega = -mu(2*psi_0 + lam) with lam = 1 - nu = 0.5
    code = main(["eval", "--mu", "-1", "--epsilon", "0.4", "--nu", "0.5",
                 "--omega-cap", "2.5", "--omega", "1.2", "--kind", "second",
                 "--variant", "poly", "--x-start", "0.5", "--x-stop", "0.5", "--x-count", "1"])
    assert code == 0
    assert "true" in capsys.readouterr().out


def test_bad_config_json_exit2(tmp_path, capsys):
    cfg = tmp_path / "broken.json"
    cfg.write_text("{not json")
    code = main(["eval", "--config", str(cfg), "--mu", "1", "--nu", "1.5",
                 "--omega-cap", "1", "--x-count", "1"])
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_missing_config_file_exit2(capsys):
    code = main(["eval", "--config", "/nonexistent/cfg.json", "--mu", "1",
                 "--nu", "1.5", "--omega-cap", "1", "--x-count", "1"])
    assert code == 2


def test_wavefunction_negative_grid_exit2(capsys):
    code = main(["wavefunction", "--system", "qqbar", "--mass", "0", "--b-slope", "1",
                 "--l", "0", "--x-start", "-1", "--x-stop", "1", "--x-count", "3"])
    assert code == 2
    assert "nonnegative" in capsys.readouterr().err
