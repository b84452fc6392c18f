"""Command-line interface: exit codes, artifacts, determinism."""

import csv
import json

import pytest

from fuzzysphere.cli import _parse_lambda, main


def run(argv):
    return main(argv)


def test_build_verb(capsys):
    assert run(["build", "--d", "1", "--lambda", "2..3"]) == 0
    out = capsys.readouterr().out
    assert "lambda=2 dim=5" in out
    assert "lambda=3 dim=7" in out


def test_lambda_parsing():
    assert _parse_lambda("4") == (4, 4)
    assert _parse_lambda("2..5") == (2, 5)
    for bad in ("5..2", "a..b", "1..2..3"):
        with pytest.raises(Exception):
            _parse_lambda(bad)


def test_usage_errors_exit_two():
    with pytest.raises(SystemExit) as exc:
        run(["verify", "--lambda", "0..2"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run(["verify", "--lambda", "2", "--tol", "-1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run(["spectrum", "--lambda", "2"])       # missing --csv
    assert exc.value.code == 2


def test_verify_passes_and_writes_json(tmp_path, capsys):
    path = tmp_path / "report.json"
    code = run(["verify", "--d", "1", "--lambda", "1..3", "--suite", "relations",
                "--json", str(path)])
    assert code == 0
    data = json.loads(path.read_text())
    assert set(data) == {"config", "checks", "summary", "version", "timestamp"}
    assert data["summary"]["failed"] == 0
    assert data["config"]["d"] == 1 and data["config"]["lambda"] == [1, 3]
    for rec in data["checks"]:
        assert {"tag", "lambda", "value", "pass"} <= set(rec)
    assert "checks passed" in capsys.readouterr().out


def test_verify_failure_exit_code(tmp_path, capsys):
    # an absurdly tight tolerance forces a residual check to fail
    code = run(["verify", "--d", "2", "--lambda", "2", "--suite", "relations",
                "--tol", "1e-30"])
    assert code == 1
    assert "FAIL " in capsys.readouterr().out


def test_verify_all_suites_sphere(tmp_path, capsys):
    code = run(["verify", "--d", "2", "--lambda", "2..3", "--suite", "all",
                "--seed", "5"])
    assert code == 0


def test_reports_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert run(["verify", "--d", "1", "--lambda", "1..4", "--suite", "scs",
                    "--seed", "7", "--json", str(p)]) == 0
    a = json.loads(paths[0].read_text())
    b = json.loads(paths[1].read_text())
    assert a["checks"] == b["checks"]


def test_reports_independent_of_jobs(tmp_path, capsys):
    paths = [tmp_path / "serial.json", tmp_path / "parallel.json"]
    for p, jobs in zip(paths, ("1", "3")):
        assert run(["verify", "--d", "1", "--lambda", "1..4",
                    "--suite", "minimize", "--seed", "3", "--jobs", jobs,
                    "--json", str(p)]) == 0
    a = json.loads(paths[0].read_text())
    b = json.loads(paths[1].read_text())
    assert a["checks"] == b["checks"]


def test_spectrum_csv_row_count(tmp_path, capsys):
    path = tmp_path / "spec.csv"
    assert run(["spectrum", "--d", "2", "--lambda", "5", "--csv", str(path)]) == 0
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    # sum over m of the block sizes: (lam+1)^2 = 36 eigenvalues
    assert len(rows) == 36
    assert {r["m"] for r in rows} == {str(m) for m in range(-5, 6)}
    assert all(float(r["eigenvalue"]) <= 1.5 for r in rows)


def test_spectrum_csv_circle(tmp_path, capsys):
    path = tmp_path / "spec1.csv"
    assert run(["spectrum", "--d", "1", "--lambda", "3..4", "--csv", str(path)]) == 0
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 7 + 9
    assert all(r["m"] == "" for r in rows)


def test_plotdata(tmp_path, capsys):
    path = tmp_path / "plot.csv"
    assert run(["plotdata", "--d", "1", "--lambda", "2..4", "--csv",
                str(path)]) == 0
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    series = {r["series"] for r in rows}
    assert {"dispersion", "dispersion-bound", "alpha1",
            "alpha1-bound", "interlacing"} <= series


def test_scs_and_minimize_verbs(capsys):
    assert run(["scs", "--d", "1", "--lambda", "2..3"]) == 0
    assert run(["minimize", "--d", "2", "--lambda", "2"]) == 0
