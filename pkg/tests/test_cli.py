import io
import json
import subprocess
import sys

import pytest

from lambertcoop.cooperation import db_to_linear, outage_coop
from lambertcoop.cli import EXIT_CONVERGENCE, EXIT_DOMAIN, EXIT_OK, main, parse_csv


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--format", "json")
    assert code == EXIT_OK
    return json.loads(text)


def test_lambert_branch_point():
    [row] = run_json("lambert", "--z", "-0.36787944117", "--branch", "m1")
    assert row["w"] == pytest.approx(-1.0, abs=1e-5)


def test_lambert_zero_and_lower_branch():
    assert run_json("lambert", "--z", "0", "--branch", "0")[0]["w"] == 0.0
    assert run_json("lambert", "--z", "-0.1", "--branch", "m1")[0]["w"] == pytest.approx(-3.577152, abs=1e-6)


def test_lambert_domain_error_exit_code():
    code, _ = run("lambert", "--z", "-1")
    assert code == EXIT_DOMAIN
    code, _ = run("lambert", "--z", "0.5", "--branch", "m1")
    assert code == EXIT_DOMAIN


def test_convergence_error_exit_code(monkeypatch):
    from lambertcoop import cli
    from lambertcoop.errors import ConvergenceError

    def boom(*a, **k):
        raise ConvergenceError("stuck")

    monkeypatch.setattr(cli, "lambert_w", boom)
    code, _ = run("lambert", "--z", "1")
    assert code == EXIT_CONVERGENCE


def test_usage_errors_exit_2():
    assert run("nonsense")[0] == EXIT_DOMAIN
    assert run("lambert")[0] == EXIT_DOMAIN
    assert run("sweep", "--variable", "u", "--start", "1", "--stop", "0")[0] == EXIT_DOMAIN


def test_bounds_row_below_unit_u():
    [row] = run_json("bounds", "--u", str(1 - 1e-9))
    assert row["lower_c1"] == pytest.approx(-3.4142, abs=1e-4)
    assert row["lower_c3_4"] == pytest.approx(-3.1642, abs=1e-4)
    assert row["w_m1"] == pytest.approx(-3.1461, abs=1e-4)
    assert row["upper_c2_3"] == pytest.approx(-3.0809, abs=1e-4)
    assert row["lower_c1"] < row["lower_c3_4"] < row["w_m1"] < row["upper_c2_3"]


def test_bounds_row_near_zero_and_beyond_unit():
    [row] = run_json("bounds", "--u", "1e-12")
    for k in ("lower_c1", "lower_c3_4", "w_m1", "upper_c2_3", "barry"):
        assert row[k] == pytest.approx(-1.0, abs=1e-5)
    [row] = run_json("bounds", "--u", "4")
    assert row["lower_c3_4"] is None
    assert run("bounds", "--u", "0")[0] == EXIT_DOMAIN


def test_decide_example_case():
    [row] = run_json("decide", "--theta", "-0.983", "--theta-prime", "5.782", "--gamma", "5")
    assert row["verdict"].endswith("harmful")
    assert row["min_gamma"] == pytest.approx(14.925, abs=5e-3)


def test_decide_uses_exact_threshold_in_between():
    [row] = run_json("decide", "--theta", "5", "--theta-prime", "6.53", "--gamma", "10")
    assert row["exact_threshold"] == pytest.approx(7.07, abs=1e-2)
    assert row["verdict"] == "certainly-beneficial"
    [row] = run_json("decide", "--theta", "5", "--theta-prime", "7.05", "--gamma", "10")
    assert row["verdict"] == "exact-beneficial"


def test_decide_linear_flag():
    [row] = run_json("decide", "--theta", "3.1623", "--theta-prime", "4", "--gamma", "10", "--linear")
    assert row["safe_threshold"] == pytest.approx(5.0305, abs=1e-4)


def test_decide_rejects_theta_prime_below_theta():
    assert run("decide", "--theta", "5", "--theta-prime", "4", "--gamma", "10")[0] == EXIT_DOMAIN


def test_decide_text_output():
    code, text = run("decide", "--theta", "-0.983", "--theta-prime", "5.782", "--gamma", "5")
    assert code == EXIT_OK
    assert "verdict" in text and "harmful" in text


def test_sweep_gamma_fig3a_shape():
    rows = run_json("sweep", "--variable", "gamma_bar", "--start", "5", "--stop", "25",
                    "--points", "41", "--theta", "5")
    border = [r["exact_threshold"] for r in rows]
    assert all(b > a for a, b in zip(border, border[1:]))
    for r in rows:
        assert r["theta"] == pytest.approx(5.0)
        assert r["safe_threshold"] <= r["exact_threshold"]
        if r["avoid_threshold"] is not None:
            assert r["exact_threshold"] <= r["avoid_threshold"]
    # first point has theta == gamma_bar, outside the avoid threshold's validity
    assert rows[0]["avoid_threshold"] is None
    assert all(r["avoid_threshold"] is not None for r in rows[1:])


def test_sweep_theta_fig3b_shape():
    rows = run_json("sweep", "--variable", "theta", "--start", "-15", "--stop", "5",
                    "--points", "41", "--gamma", "5")
    border = [r["exact_threshold"] for r in rows]
    assert all(b > a for a, b in zip(border, border[1:]))
    band = [r["exact_threshold"] - r["theta"] for r in rows]
    assert all(b < a for a, b in zip(band, band[1:]))
    # theta == gamma_bar at the last point: avoid threshold not certified
    assert rows[-1]["avoid_threshold"] is None


def test_sweep_z_emits_both_branches():
    rows = run_json("sweep", "--variable", "z", "--start", "-0.367", "--stop", "1", "--points", "20")
    for r in rows:
        assert r["w0"] >= -1.0
        if r["z"] < 0:
            assert r["w_m1"] <= -1.0
        else:
            assert r["w_m1"] is None


def test_sweep_u_log_scale():
    rows = run_json("sweep", "--variable", "u", "--start", "1e-6", "--stop", "1e3",
                    "--points", "30", "--scale", "log")
    assert len(rows) == 30
    assert all(r["lower_c1"] < r["w_m1"] < r["upper_c2_3"] for r in rows)


def test_sweep_db_scale_rejected_for_u():
    assert run("sweep", "--variable", "u", "--start", "0.1", "--stop", "1", "--scale", "db")[0] == EXIT_DOMAIN


@pytest.mark.parametrize("variable, extra", [
    ("gamma_bar", ["--theta", "5"]),
    ("theta", ["--gamma", "5"]),
    ("u", []),
    ("z", []),
])
def test_two_point_sweep_csv(variable, extra):
    start, stop = ("0.1", "0.9") if variable == "u" else ("-0.3", "-0.1") if variable == "z" else ("-5", "4")
    code, text = run("sweep", "--variable", variable, "--start", start, "--stop", stop,
                     "--points", "2", "--format", "csv", *extra)
    assert code == EXIT_OK
    lines = text.strip().splitlines()
    assert len(lines) == 3
    assert len(parse_csv(text)) == 2


@pytest.mark.parametrize("argv", [
    ["lambert", "--z", "-0.2", "--branch", "m1"],
    ["bounds", "--u", "0.5"],
    ["decide", "--theta", "5", "--theta-prime", "6", "--gamma", "10"],
    ["sweep", "--variable", "theta", "--start", "-15", "--stop", "5", "--points", "7", "--gamma", "5"],
    ["simulate", "--mode", "coop", "--threshold", "5", "--gamma", "10", "--n", "1000", "--seed", "3"],
])
def test_csv_round_trips_against_json(argv):
    code, text = run(*argv, "--format", "csv")
    assert code == EXIT_OK
    from_csv = parse_csv(text)
    from_json = run_json(*argv)
    assert len(from_csv) == len(from_json)
    for a, b in zip(from_csv, from_json):
        assert list(a) == list(b)
        for k in a:
            if isinstance(b[k], str):
                assert str(a[k]) == b[k] or a[k] == float(b[k])
            else:
                assert a[k] == b[k]


def test_simulate_noncoop_z_score():
    [row] = run_json("simulate", "--mode", "noncoop", "--threshold", "5", "--gamma", "10",
                     "--n", "1000000", "--seed", "8")
    assert row["analytic"] == pytest.approx(0.27110, abs=1e-5)
    assert abs(row["z_score"]) <= 4


def test_simulate_coop_z_score():
    [row] = run_json("simulate", "--mode", "coop", "--threshold", "5.782", "--gamma", "10",
                     "--n", "1000000", "--seed", "8", "--workers", "4")
    # 5.782 dB is 3.78617 linear
    assert row["analytic"] == pytest.approx(outage_coop(db_to_linear(5.782), 10.0), rel=1e-11)
    assert row["analytic"] == pytest.approx(0.175924, abs=1e-6)
    assert abs(row["z_score"]) <= 4


def test_simulate_single_trial_reports_undefined_spread():
    [row] = run_json("simulate", "--mode", "noncoop", "--threshold", "5", "--gamma", "10", "--n", "1")
    assert row["estimate"] in (0.0, 1.0)
    assert row["std_error"] is None and row["z_score"] is None
    code, text = run("simulate", "--mode", "noncoop", "--threshold", "5", "--gamma", "10", "--n", "1")
    assert "undefined" in text


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "lambertcoop", "lambert", "--z", "2.718281828459045", "--format", "csv"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert parse_csv(proc.stdout)[0]["w"] == pytest.approx(1.0)
