from __future__ import annotations

import json
import subprocess
import sys

import pytest

from weakkam import cli
from weakkam.config import load_config
from weakkam.oracle import brute_beta, brute_minimal_subaction
from weakkam.pipeline import analyze, audit, render
from weakkam.truncation import level_graph

from conftest import GOLDEN


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", ["e2", "e3"])
def test_analyze_reproduces_golden(name, tmp_path, capsys):
    target = tmp_path / "r.json"
    code, _, _ = run(["analyze", str(GOLDEN / f"{name}.json"), "--emit", str(target)], capsys)
    assert code == 0
    assert target.read_bytes() == (GOLDEN / f"{name}.report.json").read_bytes()


def test_e2_report_contents():
    r = json.loads((GOLDEN / "e2.report.json").read_text())
    assert r["beta"] == "5" and r["verdict"] == "OK"
    assert r["calibrated_subaction"]["u"] == {"0": "-5", "1": "-8", "2": "0"}
    assert r["minimal_subaction"]["u"] == {"0": "0", "1": "0", "2": "0"}
    assert r["oscillation"] == {"osc": "8", "bound": "15"}
    assert r["critical"]["critical_edges"] == [[2, 2]]
    assert r["certificate"]["verdict"] == "VALID"


def test_e3_report_contents():
    r = json.loads((GOLDEN / "e3.report.json").read_text())
    assert r["truncation"]["I_hat"] == 1 and r["beta"] == "0"
    assert r["critical"]["critical_edges"] == [[0, 0]]
    assert all(c["ok"] for c in r["checks"])


@pytest.mark.parametrize("name", ["e2", "e3"])
def test_golden_values_match_oracle(name):
    cfg = load_config(GOLDEN / f"{name}.json")
    r = json.loads((GOLDEN / f"{name}.report.json").read_text())
    wg = level_graph(cfg.model, r["truncation"]["I_hat"])
    beta = brute_beta(wg)
    assert str(beta) == r["beta"]
    u_A = brute_minimal_subaction(wg, beta, len(wg.vertices))
    assert {",".join(map(str, v)): str(x) for v, x in u_A.items()} == r["minimal_subaction"]["u"]


@pytest.mark.parametrize("name", ["e2", "e3"])
def test_round_trip_audit(name):
    cfg = load_config(GOLDEN / f"{name}.json")
    report = json.loads((GOLDEN / f"{name}.report.json").read_text())
    assert audit(cfg, report) == []
    tampered = json.loads(render(report))
    tampered["beta"] = "7"
    assert "beta differs" in audit(cfg, tampered)


def test_csv_tables(tmp_path, capsys):
    code, out, _ = run(["analyze", str(GOLDEN / "e3.json"), "--csv", str(tmp_path), "--horizon", "3"], capsys)
    assert code == 0 and json.loads(out)["finite_horizon"] == {"1": "0", "2": "0", "3": "0"}
    assert (tmp_path / "beta_by_I.csv").read_text().splitlines()[:2] == ["I,beta", "0,0"]
    assert (tmp_path / "finite_horizon.csv").read_text().splitlines() == ["k,bound", "1,0", "2,0", "3,0"]


def test_float_mode_flag(capsys):
    code, out, _ = run(["analyze", str(GOLDEN / "e2.json"), "--mode", "float"], capsys)
    r = json.loads(out)
    assert code == 0 and r["mode"] == "float" and float(r["beta"]) == 5.0


def test_malformed_config_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    raw = json.loads((GOLDEN / "e2.json").read_text())
    raw["potential"]["table"][2]["value"] = "x/y"
    bad.write_text(json.dumps(raw))
    code, _, err = run(["analyze", str(bad)], capsys)
    assert code == 2 and "error[cli.ConfigError]" in err and "potential.table[2].value" in err


def test_invalid_model_exit_2(tmp_path, capsys):
    raw = json.loads((GOLDEN / "e3.json").read_text())
    raw["declared"]["sup_A"] = "-1"
    path = tmp_path / "m.json"
    path.write_text(json.dumps(raw))
    code, _, err = run(["analyze", str(path)], capsys)
    assert code == 2 and "potential.InvalidModel" in err


def test_falsified_exit_3(monkeypatch, capsys):
    def broken(cfg):
        r = analyze(cfg)
        r["checks"][0]["ok"] = False
        r["verdict"] = "FALSIFIED"
        return r

    monkeypatch.setattr(cli, "analyze", broken)
    code, _, err = run(["analyze", str(GOLDEN / "e2.json")], capsys)
    assert code == 3 and "FALSIFIED" in err


@pytest.mark.parametrize(
    "beta, u, code",
    [("5", ["-5", "-8", "0"], 0), ("4", ["0", "0", "0"], 1), ("5", ["0", "0", "0"], 0)],
)
def test_verify_examples(beta, u, code, tmp_path, capsys):
    path = tmp_path / "u.json"
    path.write_text(json.dumps({"beta": beta, "u": dict(zip("012", u))}))
    got, out, _ = run(["verify", str(GOLDEN / "e2.json"), str(path)], capsys)
    assert got == code
    assert out.strip().endswith("VALID" if code == 0 else "INVALID")


def test_verify_accepts_report(capsys):
    code, _, _ = run(["verify", str(GOLDEN / "e3.json"), str(GOLDEN / "e3.report.json")], capsys)
    assert code == 0


def test_verify_parse_error(tmp_path, capsys):
    path = tmp_path / "u.json"
    path.write_text('{"beta": "5"}')
    code, _, _ = run(["verify", str(GOLDEN / "e2.json"), str(path)], capsys)
    assert code == 2
    path.write_text('{"beta": "5", "u": {"0": "0"}}')
    code, _, _ = run(["verify", str(GOLDEN / "e2.json"), str(path)], capsys)
    assert code == 2


def test_oracle_command(capsys):
    code, out, _ = run(["oracle", str(GOLDEN / "e2.json"), "--seeds", "5"], capsys)
    assert code == 0 and "MISMATCH" not in out
    code, _, err = run(["oracle", str(GOLDEN / "e3.json")], capsys)
    assert code == 4 and "oracle.TooLarge" in err


def test_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "weakkam", "analyze", str(GOLDEN / "e2.json")], capture_output=True
    )
    assert r.returncode == 0
    assert r.stdout == (GOLDEN / "e2.report.json").read_bytes()
