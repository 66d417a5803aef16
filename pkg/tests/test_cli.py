import json
import math
import subprocess
import sys

import numpy as np
import pytest


def run_cli(*args, check=True):
    proc = subprocess.run(
        [sys.executable, "-m", "multhankel", *args],
        capture_output=True,
        text=True,
    )
    if check:
        assert proc.returncode == 0, proc.stderr
    return proc


def records_of(proc):
    return [json.loads(line) for line in proc.stdout.splitlines() if line.strip()]


def test_pzero():
    (rec,) = records_of(run_cli("pzero"))
    assert abs(rec["p0"] - 5.738817179) < 1e-8


def test_lift_both_directions():
    (rec,) = records_of(run_cli("lift", "--n", "12"))
    assert rec == {"n": 12, "exponents": [2, 1]}
    (rec,) = records_of(run_cli("lift", "--exponents", "2,1"))
    assert rec["n"] == 12


def test_lift_overflow_exits_3():
    proc = run_cli("lift", "--exponents", ",".join(["1"] * 16), check=False)
    assert proc.returncode == 3
    err = json.loads(proc.stderr)
    assert err["error"] == "OverflowLabel"


def test_usage_errors_exit_2():
    assert run_cli("frobnicate", check=False).returncode == 2
    assert run_cli("lift", check=False).returncode == 2
    assert run_cli("lift", "--n", "4", "--exponents", "1", check=False).returncode == 2
    assert run_cli("ratio", "--p", "2", check=False).returncode == 2
    assert run_cli("lift", "--n", "0", check=False).returncode == 2
    bad_p = run_cli("verify-thm2", "--a", "1", "--b", "1", "--p", "7", check=False)
    assert bad_p.returncode == 2 and "p0" in bad_p.stderr


def test_matrix_export_and_svd_reimport(tmp_path):
    out = tmp_path / "m.csv"
    proc = run_cli("matrix", "--normalized-linear", "3", "--output", str(out))
    summary = json.loads(proc.stdout)
    assert summary["dim"] == 4
    direct = records_of(run_cli("svd", "--normalized-linear", "3"))[0]
    reimported = records_of(run_cli("svd", "--matrix-csv", str(out)))[0]
    assert np.allclose(direct["singular_values"], reimported["singular_values"], atol=1e-12)
    assert direct["rank"] == reimported["rank"] == 2


def test_matrix_requires_output():
    assert run_cli("matrix", "--normalized-linear", "2", check=False).returncode == 2


def test_matrix_cap_exits_3():
    proc = run_cli(
        "matrix", "--normalized-linear", "9", "--max-dim", "5", "--output", "/dev/null",
        check=False,
    )
    assert proc.returncode == 3
    assert json.loads(proc.stderr)["error"] == "MatrixTooLarge"


def test_schatten_infinite_p():
    (rec,) = records_of(run_cli("schatten", "--normalized-linear", "4", "--p", "inf"))
    assert rec["p"] == math.inf  # serialized as Infinity, parsed back
    assert rec["schatten"] == pytest.approx(1.0, abs=1e-10)


def test_l1_echoes_seed_and_is_deterministic():
    args = ("l1", "--normalized-linear", "8", "--method", "mc", "--samples", "20000", "--seed", "5")
    p1, p2 = run_cli(*args), run_cli(*args)
    assert p1.stdout == p2.stdout  # byte-identical
    (rec,) = records_of(p1)
    assert rec["seed"] == 5 and rec["samples_or_nodes"] == 20000
    assert rec["stderr"] > 0


def test_l1_grid_matches_constant():
    (rec,) = records_of(run_cli("l1", "--linear", "1", "--tol", "1e-8"))
    assert rec["value"] == pytest.approx(1.0, abs=1e-12)
    assert rec["method"] == "grid"


def test_ratio_record_fields():
    (rec,) = records_of(
        run_cli(
            "ratio",
            "--f-normalized-linear", "2",
            "--phi-normalized-linear", "2",
            "--p", "8",
            "--tol", "1e-7",
        )
    )
    assert rec["exceeded_one"] is True
    assert rec["ratio"] == pytest.approx(1.018534, abs=1e-4)
    for key in ("d", "p", "inner_abs", "schatten", "l1", "l1_stderr"):
        assert key in rec


def test_verify_thm1_cli():
    (rec,) = records_of(
        run_cli("verify-thm1", "--d", "2", "--p", "8", "--method", "grid", "--tol", "1e-7")
    )
    assert rec["spectrum_ok"] and rec["schatten_ok"] and rec["exceeded_one"]


def test_verify_thm2_cli():
    (rec,) = records_of(
        run_cli("verify-thm2", "--a", "0.6,0.8i", "--b", "1,1", "--p", "2")
    )
    assert rec["holds"] and rec["cauchy_schwarz_ok"]


def test_amplify_cli():
    (rec,) = records_of(
        run_cli(
            "amplify",
            "--f-normalized-linear", "2",
            "--phi-normalized-linear", "2",
            "--m", "3",
        )
    )
    assert rec["m"] == 3 and rec["shift_step"] == 2
    assert len(rec["F"]) == 8 and len(rec["Phi"]) == 8
    assert rec["inner_re"] == pytest.approx(1.0, abs=1e-12)


def test_scan_cli_deterministic_and_structured(tmp_path):
    args = (
        "scan", "--p", "8", "--d-max", "3", "--method", "mc",
        "--samples", "50000", "--seed", "3",
    )
    p1, p2 = run_cli(*args), run_cli(*args)
    assert p1.stdout == p2.stdout
    recs = records_of(p1)
    assert recs[-1]["minimal_d"] == 2 and recs[-1]["seed"] == 3
    assert [r["d"] for r in recs[:-1]] == [1, 2]
    # --output writes the same document to a file
    out = tmp_path / "scan.jsonl"
    p3 = run_cli(*args, "--output", str(out))
    assert p3.stdout == ""
    assert out.read_text() == p1.stdout


def test_maximize_cli():
    args = (
        "maximize", "--d", "2", "--p", "2", "--restarts", "2",
        "--iters", "10", "--seed", "1", "--tol", "1e-4",
    )
    p1, p2 = run_cli(*args), run_cli(*args)
    assert p1.stdout == p2.stdout
    (rec,) = records_of(p1)
    assert rec["best_ratio"] < 1
    assert len(rec["a"]) == 2 and {"re", "im"} <= set(rec["a"][0])


def test_symbol_file_input(tmp_path):
    path = tmp_path / "sym.json"
    path.write_text(json.dumps([{"exponents": [1], "re": 1.0, "im": 0.0}]))
    (rec,) = records_of(run_cli("l1", "--file", str(path), "--tol", "1e-6"))
    assert rec["value"] == pytest.approx(1.0, abs=1e-10)
