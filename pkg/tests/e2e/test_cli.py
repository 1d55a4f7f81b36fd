"""End-to-end tests for the mbp-rk command line.

Every test drives ``main(argv)`` exactly as the console script does and checks
the exit code plus what lands on stdout or in the written trace.
"""

import json
import math
from pathlib import Path

import pytest

from src.integrator import read_trace_csv
from src.main import EXIT_BOUND, EXIT_DATA, EXIT_USAGE, main

FIXTURES = Path(__file__).parent.parent / "fixtures"

# ============================================================================
# certify
# ============================================================================


@pytest.mark.e2e
def test_certify_dissipative_scheme(capsys):
    code = main(["certify", "rk2-ssp", "--epsilon", "0.1", "--grid-n", "128"])
    report = json.loads(capsys.readouterr().out)

    assert code == 0
    assert report["scheme"] == "rk2-ssp"
    assert report["certificate"]["mbp"] is True
    assert report["certificate"]["lambda_min"] == pytest.approx((3 - math.sqrt(2)) / 2, abs=1e-9)
    assert report["bounds"]["tau_ssp"] == pytest.approx(6.0239e-3, rel=1e-4)


@pytest.mark.e2e
def test_certify_without_bounds(capsys):
    code = main(["certify", "rk3-ssp"])
    report = json.loads(capsys.readouterr().out)

    assert code == 0
    assert report["bounds"] is None


@pytest.mark.e2e
def test_certify_mbp_only(capsys):
    code = main(["certify", "rk3-nondissipative"])
    report = json.loads(capsys.readouterr().out)

    assert code == 2
    assert report["certificate"]["energy_dissipative"] is False


@pytest.mark.e2e
def test_certify_not_mbp(capsys):
    code = main(["certify", "classic-rk4"])
    report = json.loads(capsys.readouterr().out)

    assert code == 3
    assert report["certificate"]["witness"]["row"] == 2
    assert report["certificate"]["witness"]["col"] == 0


@pytest.mark.e2e
def test_certify_tableau_file(capsys):
    code = main(["certify", str(FIXTURES / "heun_tableau.json")])

    assert code == 0
    assert json.loads(capsys.readouterr().out)["scheme"] == "heun"


@pytest.mark.e2e
@pytest.mark.parametrize("fixture", ["malformed_tableau.json", "zero_subdiagonal_tableau.json"])
def test_certify_unusable_tableau(fixture):
    assert main(["certify", str(FIXTURES / fixture)]) == EXIT_DATA


@pytest.mark.e2e
def test_certify_unknown_scheme():
    assert main(["certify", "rk9-imaginary"]) == EXIT_USAGE


@pytest.mark.e2e
def test_certify_needs_both_bound_flags():
    assert main(["certify", "rk2-ssp", "--epsilon", "0.1"]) == EXIT_USAGE


@pytest.mark.e2e
def test_bad_flag_is_a_usage_error():
    with pytest.raises(SystemExit) as exc_info:
        main(["certify", "rk2-ssp", "--no-such-flag"])
    assert exc_info.value.code == EXIT_USAGE


# ============================================================================
# simulate
# ============================================================================


@pytest.mark.e2e
def test_simulate_writes_trace(tmp_path):
    out = tmp_path / "trace.csv"
    code = main(
        ["simulate", "rk3-ssp", "--tau", "auto-energy", "--t-final", "0.2", "--out", str(out)]
    )
    trace = read_trace_csv(out)

    assert code == 0
    assert trace.metadata["scheme"] == "rk3-ssp"
    assert trace.metadata["tau_mode"] == "auto-energy"
    assert trace.final_time == pytest.approx(0.2)
    assert main(["check", str(out)]) == 0


@pytest.mark.e2e
def test_simulate_zero_final_time(tmp_path):
    out = tmp_path / "trace.csv"

    assert main(["simulate", "rk2-ssp", "--t-final", "0", "--out", str(out)]) == 0
    assert len(read_trace_csv(out).rows) == 1


@pytest.mark.e2e
def test_simulate_energy_step_for_nondissipative_scheme(tmp_path):
    out = tmp_path / "trace.csv"
    code = main(["simulate", "rk3-nondissipative", "--tau", "auto-energy", "--out", str(out)])

    assert code == EXIT_USAGE
    assert not out.exists()


@pytest.mark.e2e
def test_simulate_rejects_bad_tau(tmp_path):
    with pytest.raises(SystemExit) as exc_info:
        main(["simulate", "rk2-ssp", "--tau", "-1", "--out", str(tmp_path / "t.csv")])
    assert exc_info.value.code == EXIT_USAGE


@pytest.mark.e2e
def test_simulate_bound_violation_exit_code(tmp_path, monkeypatch):
    from src.config import config

    monkeypatch.setattr(config, "mbp_slack", -0.5)
    code = main(["simulate", "rk2-ssp", "--t-final", "0.05", "--out", str(tmp_path / "t.csv")])

    assert code == EXIT_BOUND


@pytest.mark.e2e
def test_simulate_numeric_tau_with_breach_exits_one(tmp_path):
    out = tmp_path / "trace.csv"
    code = main(
        ["simulate", "classic-rk4", "--tau", "0.02", "--t-final", "0.1", "--ic", "random:7", "--out", str(out)]
    )

    assert code == 1
    assert out.exists()


# ============================================================================
# check and study
# ============================================================================


@pytest.mark.e2e
@pytest.mark.parametrize(
    "fixture,expected",
    [
        ("passing_trace.csv", 0),
        ("energy_violation_trace.csv", 1),
        ("mbp_violation_trace.csv", 1),
        ("empty_trace.csv", EXIT_DATA),
        ("bad_row_trace.csv", EXIT_DATA),
    ],
)
def test_check(fixture, expected):
    assert main(["check", str(FIXTURES / fixture)]) == expected


@pytest.mark.e2e
def test_study():
    assert main(["study", "rk2-ssp", "--taus", "0.0078125,0.00390625"]) == 0


@pytest.mark.e2e
def test_study_needs_two_steps():
    with pytest.raises(SystemExit) as exc_info:
        main(["study", "rk2-ssp", "--taus", "0.01"])
    assert exc_info.value.code == EXIT_USAGE
