import csv
import io
import json

import pytest

from driftparadox import cli
from driftparadox.config import SEED_ENV

BROWNIAN = ["--model", "brownian", "--v", "1", "--D", "1"]
REGIME = ["--r", "1", "--lambda0", "2", "--lambda1", "1"]


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_critical_length(capsys):
    code, out, _ = run(["critical-length", *BROWNIAN, *REGIME], capsys)
    assert code == 0
    (row,) = rows(out)
    assert row["verdict"] == "CriticalLength"
    assert float(row["L_c"]) == pytest.approx(0.9468566572064444, rel=1e-15)
    assert float(row["L_c_asymptotic"]) == pytest.approx(0.6931471805599453, rel=1e-15)
    assert float(row["round_trip_residual"]) < 1e-10


def test_always_persists(capsys):
    code, out, _ = run(["critical-length", *BROWNIAN, "--r", "2", "--lambda0", "1", "--lambda1", "1"], capsys)
    assert code == 0 and rows(out)[0]["verdict"] == "AlwaysPersists"


def test_invalid_settling_rate(capsys):
    code, _, err = run(["critical-length", *BROWNIAN, "--r", "1", "--lambda0", "2", "--lambda1", "-1"], capsys)
    assert code == 2 and "settlingRate > 0" in err


def test_invalid_model(capsys):
    argv = ["critical-length", "--model", "fixed", "--drift", "0.5", "--jump-rate", "1", "--jump-size", "1", *REGIME]
    code, _, err = run(argv, capsys)
    assert code == 2 and "effective velocity must be positive" in err


def test_curve_csv_and_json(capsys):
    code, out, _ = run(["curve", "--D", "0", *REGIME, "--grid", "0.5,1,2,4,8"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "v,L_c,L_c_asymptotic,ratio"
    table = rows(out)
    assert len(table) == 5 and all(float(r["ratio"]) == 1.0 for r in table)
    assert "\r" not in out
    code, out, _ = run(["curve", "--D", "1", *REGIME, "--grid", "1,2", "--format", "json"], capsys)
    data = json.loads(out)
    assert len(data) == 2 and all(set(d) == {"v", "L_c", "L_c_asymptotic", "ratio"} for d in data)


def test_curve_rejects_unsorted_grid(capsys):
    code, _, err = run(["curve", *REGIME, "--grid", "2,1"], capsys)
    assert code == 2 and "strictly increasing" in err


def test_seventeen_significant_digits(capsys):
    _, out, _ = run(["curve", "--D", "1", *REGIME, "--grid", "1"], capsys)
    assert rows(out)[0]["L_c"] == format(0.9468566572064444, ".17g")


def test_config_file_and_override(tmp_path, capsys):
    path = tmp_path / "run.ini"
    path.write_text(
        "[model]\nfamily = exponential\nv = 1.5\ndiffusion = 0\njump_rate = 1\njump_mean = 0.5\n"
        "[regime]\nr = 1\nlambda0 = 2\nlambda1 = 1\n"
    )
    _, out, _ = run(["critical-length", "--config", str(path)], capsys)
    base = float(rows(out)[0]["L_c"])
    _, out, _ = run(["critical-length", "--config", str(path), "--lambda0", "4"], capsys)
    assert float(rows(out)[0]["L_c"]) == pytest.approx(2 * base, rel=1e-12)
    bad = tmp_path / "bad.ini"
    bad.write_text("[model]\nspeed = 1\n")
    code, _, err = run(["critical-length", "--config", str(bad)], capsys)
    assert code == 2 and "unknown key" in err


def test_simulate_washout_row(capsys):
    code, out, _ = run(["simulate", "washout", *BROWNIAN, "--lambda1", "1", "--L", "1", "--n", "20000"], capsys)
    (row,) = rows(out)
    assert code == 0 and float(row["abs_z"]) <= 4


def test_simulate_bbm(capsys):
    code, out, _ = run(["simulate", "bbm", "--v", "-1.5", "--D", "1", "--r", "0.5"], capsys)
    assert code == 0 and float(rows(out)[0]["survival_fraction"]) < 0.05


def test_population_outputs(capsys):
    argv = ["simulate", "population", *BROWNIAN, *REGIME, "--L", "2", "--replicates", "10", "--seed", "7", "--cap", "2000"]
    _, out, _ = run(argv, capsys)
    assert out.splitlines()[0] == "replicate,extinct,extinctionTime" and len(rows(out)) == 10
    _, out, _ = run(argv + ["--trajectory"], capsys)
    assert out.splitlines()[0] == "time,benthic,mobile"


def test_env_seed(monkeypatch, capsys):
    argv = ["simulate", "washout", *BROWNIAN, "--lambda1", "1", "--L", "1", "--n", "2000"]
    _, default, _ = run(argv, capsys)
    monkeypatch.setenv(SEED_ENV, "42")
    _, env, _ = run(argv, capsys)
    _, flag, _ = run(argv + ["--seed", "42"], capsys)
    assert env == flag != default


def test_validate_small_n_flags_error_bars(capsys):
    code, out, _ = run(["validate", "--n", "100", "--replicates", "20"], capsys)
    table = rows(out)
    assert code in (0, 1)
    assert (code == 0) == all(r["passed"] == "true" for r in table)
    stat_rows = [r for r in table if r["rule"] == "4se"]
    assert stat_rows and all(r["note"] == "wide error bars" for r in stat_rows)


def test_validate_rejects_bad_model(capsys):
    code, _, _ = run(["validate", "--model", "brownian", "--v", "-1", "--D", "1", "--n", "100"], capsys)
    assert code == 2


def test_output_file(tmp_path, capsys):
    target = tmp_path / "curve.csv"
    run(["curve", *REGIME, "--D", "1", "--grid", "1,2", "--output", str(target)], capsys)
    assert target.read_bytes().startswith(b"v,L_c,L_c_asymptotic,ratio\n")
