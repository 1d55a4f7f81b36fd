"""Integration tests for monitored Allen-Cahn runs.

These run the full pipeline on the reference problem: eps = 0.1, N = 128,
random:42 initial data, t in [0, 2], with automatic step selection.
"""

import pytest

from src.certificate import certify_scheme
from src.config import config
from src.errors import BoundViolation, ConfigError
from src.integrator import check_trace, simulate
from src.integrator.simulate import select_step, step_count
from src.models.simulation import SimulationConfig
from src.spatial import Grid, State, save_state_csv
from src.tableau import PRESETS

# ============================================================================
# Test Configuration
# ============================================================================

EPSILON = 0.1
GRID_N = 128
T_FINAL = 2.0


def _config(scheme: str, tau: float | str, **overrides) -> SimulationConfig:
    settings = {
        "scheme": scheme,
        "epsilon": EPSILON,
        "n": GRID_N,
        "t_final": T_FINAL,
        "tau": tau,
        "ic": "random:42",
    }
    return SimulationConfig(**(settings | overrides))


# ============================================================================
# Automatic step selection
# ============================================================================


@pytest.mark.integration
@pytest.mark.parametrize("scheme", ["rk2-ssp", "rk3-ssp", "rk4-5stage"])
def test_auto_mbp_keeps_every_stage_bounded(scheme):
    trace = simulate(_config(scheme, "auto-mbp"))
    verdict = check_trace(trace)

    assert verdict.mbp_pass
    assert all(r.stage_max_norm <= 1.0 + 1e-14 for r in trace.rows[1:])
    assert trace.final_time == T_FINAL
    assert trace.metadata["tau_mode"] == "auto-mbp"


@pytest.mark.integration
@pytest.mark.parametrize("scheme", ["rk2-ssp", "rk3-ssp", "rk4-5stage"])
def test_auto_energy_dissipates(scheme):
    trace = simulate(_config(scheme, "auto-energy"))
    verdict = check_trace(trace)

    assert verdict.passed
    assert max(r.energy_delta for r in trace.rows) <= 1e-12
    assert trace.rows[-1].energy < trace.rows[0].energy


@pytest.mark.integration
def test_auto_energy_step_respects_both_bounds():
    cfg = _config("rk3-ssp", "auto-energy")
    tau, bounds = select_step(cfg, certify_scheme(PRESETS["rk3-ssp"]), Grid(GRID_N).h)

    assert tau == pytest.approx(0.9 * min(bounds.tau_lambda, bounds.tau_ssp))
    assert tau < bounds.tau_ssp


@pytest.mark.integration
def test_runs_are_deterministic():
    first = simulate(_config("rk2-ssp", "auto-mbp", t_final=0.2))
    second = simulate(_config("rk2-ssp", "auto-mbp", t_final=0.2))

    assert first == second


@pytest.mark.integration
def test_last_step_lands_on_final_time():
    tau = 0.003
    trace = simulate(_config("rk2-ssp", tau, t_final=0.01))

    assert len(trace.rows) == step_count(0.01, tau) + 1 == 5
    assert [r.time for r in trace.rows[:-1]] == pytest.approx([0.0, 0.003, 0.006, 0.009])
    assert trace.rows[-1].time == 0.01


@pytest.mark.integration
def test_zero_final_time_gives_initial_row_only():
    trace = simulate(_config("rk3-ssp", "auto-mbp", t_final=0.0))

    assert len(trace.rows) == 1
    assert trace.rows[0].step == 0 and trace.rows[0].time == 0.0


@pytest.mark.integration
def test_pure_phase_is_an_equilibrium(tmp_path):
    path = tmp_path / "ones.csv"
    save_state_csv(State.constant(Grid(GRID_N), 1.0), path)

    trace = simulate(_config("rk3-ssp", "auto-energy", t_final=0.1, ic=f"file:{path}"))

    assert all(r.max_norm == pytest.approx(1.0, abs=1e-15) for r in trace.rows)
    assert all(r.energy == pytest.approx(0.0, abs=1e-20) for r in trace.rows)


# ============================================================================
# Rejected configurations
# ============================================================================


@pytest.mark.integration
def test_nondissipative_scheme_has_no_energy_step():
    with pytest.raises(ConfigError, match="lambda_min"):
        simulate(_config("rk3-nondissipative", "auto-energy"))


@pytest.mark.integration
def test_non_mbp_scheme_has_no_automatic_step():
    with pytest.raises(ConfigError):
        simulate(_config("classic-rk4", "auto-mbp"))


@pytest.mark.integration
def test_initial_data_outside_unit_ball(tmp_path):
    path = tmp_path / "big.csv"
    save_state_csv(State.constant(Grid(GRID_N), 1.5), path)

    with pytest.raises(ConfigError):
        simulate(_config("rk2-ssp", "auto-mbp", ic=f"file:{path}"))


@pytest.mark.integration
def test_numeric_tau_does_not_raise_on_breach():
    """Far above the bound, classic RK4 overshoots; the run records it and goes on."""
    trace = simulate(_config("classic-rk4", 0.02, t_final=0.1, ic="random:7"))
    verdict = check_trace(trace)

    assert len(trace.rows) == 6
    assert not verdict.mbp_pass


@pytest.mark.integration
def test_enforced_monitor_raises(monkeypatch):
    """With an automatic tau every breach is fatal; force one by shrinking the slack."""
    monkeypatch.setattr(config, "mbp_slack", -0.5)

    with pytest.raises(BoundViolation) as exc_info:
        simulate(_config("rk2-ssp", "auto-mbp", t_final=0.05))
    assert exc_info.value.kind == "mbp"
    assert exc_info.value.step == 1
