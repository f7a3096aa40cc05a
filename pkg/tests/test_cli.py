import csv
import io
import json
import subprocess
import sys

import pytest

from sl2rep.cli import Tolerances, dumps, judge, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_examples(capsys):
    code, out, _ = run(capsys, "eval", "--q", "1", "--l", "2", "--m", "5", "--theta", "0", "--y", "1")
    assert code == 0 and out.strip() == "0.60653065971263342+0i"
    code, out, _ = run(capsys, "eval", "--q", "1", "--l", "2", "--m", "9", "--json")
    doc = json.loads(out)
    assert doc["value"]["re"] == pytest.approx(0.36391839582758007, rel=1e-15)


def test_eval_jet_and_noncompact(capsys):
    code, out, _ = run(capsys, "eval", "--q", "1", "--l", "2", "--m", "5", "--jet")
    assert code == 0 and len(out.splitlines()) == 4
    code, out, _ = run(capsys, "eval", "--q", "1", "--l", "2", "--m", "5", "--t", "0", "--x", "1")
    assert out.strip() == "0.60653065971263342+0i"
    code, _, err = run(capsys, "eval", "--q", "1", "--l", "2", "--m", "5", "--t", "0")
    assert code == 2


def test_eval_inadmissible(capsys):
    code, _, err = run(capsys, "eval", "--q", "0", "--l", "2", "--m", "5")
    assert code == 2 and "= 0 mod 4" in err


def test_verify_deterministic(capsys):
    _, a, _ = run(capsys, "verify", "symbolic", "--no-timestamp")
    _, b, _ = run(capsys, "verify", "symbolic", "--no-timestamp")
    assert a == b
    doc = json.loads(a)
    statuses = {r["name"]: r["status"] for r in doc["results"]}
    assert statuses["heis_commutator_stated"] == "DISCREPANCY"
    assert statuses["heis_commutator_computed"] == "PASS"


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "special", "--no-timestamp")
    assert code == 0
    code, out, _ = run(capsys, "verify", "special", "--tol", "1e-30", "--no-timestamp")
    assert code == 1
    assert json.loads(out)["summary"]["FAIL"] > 0


def test_verify_tdreduce_preset(capsys):
    code, out, _ = run(capsys, "verify", "tdreduce", "--preset", "zero", "--no-timestamp")
    doc = json.loads(out)
    assert code == 0
    names = {r["name"] for r in doc["results"]}
    assert "transform_identity_zero" in names and not any("harmonic" in n for n in names)


def test_structure_command(capsys):
    code, out, _ = run(capsys, "structure", "--q", "1")
    assert code == 0 and json.loads(out)["q"] == 1
    code, _, err = run(capsys, "structure", "--q", "1", "--lmax", "1")
    assert code == 2 and "window too small" in err


def test_table_command(capsys):
    code, out, _ = run(capsys, "table", "--q", "1", "--lmax", "2", "--mbound", "9")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows
    low = [r for r in rows if r["lowest"] == "true"]
    assert {(r["l"], r["m"]) for r in low} == {("0", "1"), ("1", "3"), ("2", "5")}
    row = next(r for r in rows if r["l"] == "2" and r["m"] == "5")
    assert float(row["re_psi"]) == pytest.approx(0.6065306597126334, rel=1e-15)
    _, out, _ = run(capsys, "table", "--q", "1", "--lmax", "-1")
    assert out.strip().count("\n") == 0


def test_transform_zero_preset(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "transform", "--potential", "zero", "--q", "1", "--l", "2", "--m", "5",
                       "--grid=-0.2:0.2:41,0.5:1.5:51", "--report", str(report))
    assert code == 0
    doc = json.loads(report.read_text())
    assert doc["verdict"] == "PASS" and doc["index"] == {"q": 1, "l": 2, "m": 5}
    first = out.splitlines()[1].split(",")
    assert first[:2] == ["-0.20000000000000001", "0.5"]


def test_transform_rejects_lambda_with_g1(capsys):
    code, _, err = run(capsys, "transform", "--potential", "linear", "--q", "1", "--l", "2", "--m", "5")
    assert code == 2 and "g1" in err


def test_transform_lambda_mismatch(capsys):
    code, _, err = run(capsys, "transform", "--potential", "g2=harmonic; lambda=3", "--q", "1",
                       "--l", "2", "--m", "5")
    assert code == 2 and "does not match" in err


def test_usage_error_exit_code():
    proc = subprocess.run([sys.executable, "-m", "sl2rep", "verify", "nosuch"], capture_output=True)
    assert proc.returncode == 2


def test_tolerance_overrides():
    tol = Tolerances(["1e-3", "round_trip=1e-20"])
    assert tol.get("round_trip", 1.0) == 1e-20
    assert tol.get("other", 1.0) == 1e-3
    with pytest.raises(ValueError):
        Tolerances(["x=abc"])


def test_judge_finding_and_dumps():
    assert judge("a", 1.0, 1e-3, {}, finding=True).status == "DISCREPANCY"
    assert judge("a", 1.0, 1e-3, {}).status == "FAIL"
    assert judge("a", 0.0, 1e-3, {}).status == "PASS"
    assert json.loads(dumps({"z": 1 + 2j}))["z"] == {"re": 1.0, "im": 2.0}
