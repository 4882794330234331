import csv
import io
import json
import os
import subprocess
import sys

import pytest

from hermq.cli import main


def run(*argv):
    return subprocess.run([sys.executable, "-m", "hermq", *argv], capture_output=True, text=True,
                          env={**os.environ, "QHERMITE_WORKERS": "1"})


def call(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_q_example(capsys):
    code, out, _ = call(capsys, "gen", "q", "4", "--q", "1/2")
    assert code == 0
    doc = json.loads(out)
    assert doc["family"] == "q" and doc["n"] == 4 and doc["q"] == "1/2"
    assert doc["terms"] == [
        {"x": 0, "s": 2, "coeff": "7/16"},
        {"x": 2, "s": 1, "coeff": "-35/16"},
        {"x": 4, "s": 0, "coeff": "1/1"},
    ]


def test_gen_classical_pretty(capsys):
    assert call(capsys, "gen", "classical", "2", "--format", "pretty")[1] == "x^2 - s\n"


def test_gen_qp_csv(capsys):
    code, out, _ = call(capsys, "gen", "qp", "3", "--p", "3", "--q", "1/3", "--format", "csv")
    assert code == 0
    assert list(csv.reader(io.StringIO(out))) == [["x", "s", "coeff"], ["0", "1", "-4/3"], ["3", "0", "1/1"]]


def test_gen_qinv(capsys):
    code, out, _ = call(capsys, "gen", "qinv", "4", "--q", "1/2", "--format", "pretty")
    assert out.strip() == "x^4 - 35*s*x^2 + 28*s^2"


@pytest.mark.parametrize("argv", [
    ["gen", "q", "3"],
    ["gen", "q", "3", "--q", "0"],
    ["gen", "q", "3", "--q", "half"],
    ["gen", "qp", "3", "--q", "1/2"],
    ["gen", "classical", "-1"],
    ["gen", "laguerre", "2"],
    ["verify", "q", "--n-max", "0"],
    ["verify", "q", "--q-samples", "none"],
    ["fourier", "thm41", "--q", "1.5"],
    ["fourier", "thm41", "--n", "one"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert call(capsys, *argv)[0] == 2


def test_verify_json_schema(capsys):
    code, out, err = call(capsys, "verify", "qinv", "--n-max", "2", "--q-samples", "2", "--format", "json")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert rows and all(set(r) == {"identity_id", "params", "status", "residual"} for r in rows)
    assert all(r["status"] == "pass" and r["residual"] == "0" for r in rows)
    assert "0 fail" in err


def test_verify_timing_column(capsys):
    _, out, _ = call(capsys, "verify", "classical", "--n-max", "1", "--format", "csv", "--timing")
    assert out.splitlines()[0] == "identity_id,params,status,residual,runtime_ms"


def test_verify_discrepancy_does_not_fail(capsys):
    code, out, err = call(capsys, "verify", "q", "--n-max", "4", "--q-samples", "1", "--format", "csv")
    assert code == 0
    statuses = {row["identity_id"]: row["status"] for row in csv.DictReader(io.StringIO(out))
                if row["params"].startswith("n=4")}
    assert statuses["q.inversion_closed_form"] == "paper_discrepancy"
    assert statuses["q.constructions"] == "pass"


def test_verify_is_byte_deterministic():
    a = run("verify", "qp", "--n-max", "3", "--q-samples", "2", "--format", "json")
    b = run("verify", "qp", "--n-max", "3", "--q-samples", "2", "--format", "json")
    assert a.returncode == 0 and a.stdout == b.stdout and a.stdout


def test_verify_workers_keep_order():
    serial = run("verify", "qinv", "--n-max", "4", "--q-samples", "2", "--format", "csv")
    env = {**os.environ, "QHERMITE_WORKERS": "2"}
    parallel = subprocess.run([sys.executable, "-m", "hermq", "verify", "qinv", "--n-max", "4", "--q-samples", "2",
                               "--format", "csv"], capture_output=True, text=True, env=env)
    assert parallel.returncode == 0
    assert parallel.stdout == serial.stdout


def fourier_rows(out):
    return list(csv.DictReader(io.StringIO(out)))


def test_fourier_thm41_spot(capsys):
    code, out, _ = call(capsys, "fourier", "thm41", "--n", "1", "--q", "0.5", "--s", "1", "--y", "0")
    assert code == 0
    (row,) = fourier_rows(out)
    assert float(row["lhs"]) == pytest.approx(0.840896, abs=1e-6)
    assert float(row["rhs"]) == pytest.approx(0.840896, abs=1e-6)
    assert row["pass"] == "true"


def test_fourier_gauss(capsys):
    code, out, _ = call(capsys, "fourier", "gauss", "--y", "0", "--s", "1")
    assert code == 0 and float(fourier_rows(out)[0]["lhs"]) == pytest.approx(1.0)


def test_fourier_zero_integral(capsys):
    code, out, _ = call(capsys, "fourier", "thm23", "--n", "2", "--s", "1", "--format", "json")
    row = json.loads(out)
    assert code == 0 and row["status"] == "pass" and float(row["abs_err"]) <= 1e-10


def test_fourier_complex_kappa_flags_odd(capsys):
    code, out, _ = call(capsys, "fourier", "thm23", "--n", "1,2", "--m", "1", "--y", "0.5")
    statuses = [r["status"] for r in fourier_rows(out)]
    assert code == 0 and statuses == ["paper_discrepancy", "pass"]


def test_fourier_tolerance_breach_exits_1(capsys):
    assert call(capsys, "fourier", "thm41", "--n", "6", "--q", "0.8", "--tol", "1e-30")[0] == 1


def test_console_entry():
    proc = run("gen", "classical", "4", "--format", "pretty")
    assert proc.returncode == 0 and proc.stdout == "x^4 - 6*s*x^2 + 3*s^2\n"
