import csv
import json
import subprocess
import sys

import pytest

from sprforge.cli import SCHEMA, parse_coeffs, run, InputError
from corpus import UNSTABLE_A, UNSTABLE_B

FIX_A = ",".join(map(str, UNSTABLE_A))
FIX_B = ",".join(map(str, UNSTABLE_B))


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.startswith("{") else out)


def test_check_hurwitz(capsys):
    code, doc = call(capsys, "check-hurwitz", "1,3,3,1")
    assert code == 0
    assert doc["schema"] == SCHEMA and doc["verdict"] is True
    assert doc["result"]["hurwitz"] is True
    assert doc["tolerances"]["pos"] == 1e-9


def test_check_hurwitz_negative(capsys):
    code, doc = call(capsys, "check-hurwitz", "1,1,1,1")
    assert code == 1 and doc["verdict"] is False


def test_malformed_input(capsys):
    code, doc = call(capsys, "check-hurwitz", "1,x")
    assert code == 2 and doc["error"]["type"] == "InputError"


def test_unknown_verb_is_input_error(capsys):
    assert run(["frobnicate"]) == 2


def test_negative_coefficients_are_positional(capsys):
    code, doc = call(capsys, "check-spr", "-1,1", "1,1")
    assert code == 1 and doc["verdict"] is False


def test_check_schur(capsys):
    assert call(capsys, "check-schur", "1,-0.5")[0] == 0
    assert call(capsys, "check-schur", "1,-2")[0] == 1


def test_check_segment_fixture(capsys):
    code, doc = call(capsys, "check-segment", FIX_A, FIX_B)
    assert code == 1
    r = doc["result"]
    assert r["witness_lambda"] == pytest.approx(0.5, abs=1e-9)
    assert r["witness_root"] == pytest.approx([0, 1], abs=1e-9)


def test_synthesize_and_certify(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _ = call(capsys, "synthesize", "1,3,3,1", "1,6,12,8", "-o", str(out))
    assert code == 0
    doc = json.loads(out.read_text())
    r = doc["result"]
    assert len(r["c_final"]) == 4 and r["eps"]["epsilon"] > 0 and r["delta"]["delta"] > 0
    assert r["cert_a"]["verdict"] and r["cert_b"]["verdict"]
    code, cert = call(capsys, "certify", str(out))
    assert code == 0 and cert["verdict"] is True


def test_synthesize_refusal(capsys):
    code, doc = call(capsys, "synthesize", FIX_A, FIX_B)
    assert code == 1
    assert doc["error"]["type"] == "SegmentUnstable"
    assert doc["result"]["segment"]["witness_lambda"] == pytest.approx(0.5, abs=1e-9)


def test_certify_rejects_tampered_result(capsys, tmp_path):
    out = tmp_path / "r.json"
    call(capsys, "synthesize", "1,3,3,1", "1,6,12,8", "-o", str(out))
    doc = json.loads(out.read_text())
    doc["result"]["c_final"] = [1.0, -5.0, 1.0, 1.0]
    out.write_text(json.dumps(doc))
    code, cert = call(capsys, "certify", str(out))
    assert code == 1 and cert["verdict"] is False


def test_synthesize_discrete_and_certify(capsys, tmp_path):
    out = tmp_path / "d.json"
    assert call(capsys, "synthesize-discrete", "1,0,0,0", "1,-0.5,0,0", "-o", str(out))[0] == 0
    code, cert = call(capsys, "certify", str(out))
    assert code == 0 and cert["result"]["degree_bound"]


def test_sweep_csv(capsys):
    code, out = call(capsys, "sweep", "1,2", "1,1", "--omega-max", "10", "--samples", "11")
    assert code == 0
    rows = list(csv.reader(out.splitlines()))
    assert rows[0] == ["omega", "re_f", "im_f"]
    assert len(rows) == 12
    w, re_f = float(rows[6][0]), float(rows[6][1])
    assert w == 0 and re_f == 2


def test_tolerance_overrides(capsys, tmp_path, monkeypatch):
    f = tmp_path / "tol.json"
    f.write_text(json.dumps({"pos": 1e-11}))
    monkeypatch.setenv("SPR_FORGE_TOL_FILE", str(f))
    _, doc = call(capsys, "check-hurwitz", "1,1", "--tol", "stab=1e-7")
    assert doc["tolerances"]["pos"] == 1e-11 and doc["tolerances"]["stab"] == 1e-7
    monkeypatch.setenv("SPR_FORGE_TOL_FILE", str(tmp_path / "missing.json"))
    assert call(capsys, "check-hurwitz", "1,1")[0] == 2


def test_batch_preserves_order(capsys, tmp_path):
    jobs = tmp_path / "jobs.json"
    jobs.write_text(json.dumps([
        {"command": "check-hurwitz", "args": ["1,3,3,1"]},
        {"command": "check-hurwitz", "args": ["1,1,1,1"]},
        {"command": "synthesize", "args": ["1,3,3,1", "1,6,12,8"]},
    ]))
    code, doc = call(capsys, "batch", str(jobs), "--workers", "3")
    codes = [r["exit_code"] for r in doc["result"]["results"]]
    assert codes == [0, 1, 0] and code == 1


def test_deterministic_output(capsys):
    _, first = call(capsys, "synthesize", "1,3,3,1", "1,6,12,8")
    _, second = call(capsys, "synthesize", "1,3,3,1", "1,6,12,8")
    assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)


def test_parse_coeffs(tmp_path):
    assert parse_coeffs("1, 2 3").tolist() == [1.0, 2.0, 3.0]
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"descending": [1, 2]}))
    assert parse_coeffs(str(f)).tolist() == [1.0, 2.0]
    f.write_text(json.dumps({"coeffs": [1, 2]}))
    with pytest.raises(InputError):
        parse_coeffs(str(f))
    with pytest.raises(InputError):
        parse_coeffs("")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sprforge", "check-hurwitz", "1,3,3,1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"] is True
