"""Integration tests for the empirical convergence study.

Smooth data (cosine:1) on N = 64 with eps = 0.25 up to t = 0.5; the step
sizes are halved twice, so each run gives two observed orders.
"""

import pytest

from src.integrator import convergence_study, run_convergence_study
from src.integrator.study import observed_orders

EPSILON = 0.25
GRID_N = 64
T_FINAL = 0.5
TAUS = [T_FINAL / 64, T_FINAL / 128, T_FINAL / 256]


@pytest.mark.asyncio
@pytest.mark.integration
@pytest.mark.parametrize(
    "scheme,order,tolerance",
    [
        ("forward-euler", 1.0, 0.1),
        ("rk2-ssp", 2.0, 0.2),
        ("rk3-ssp", 3.0, 0.3),
        ("rk4-5stage", 4.0, 0.3),
        ("classic-rk4", 4.0, 0.3),
    ],
)
async def test_observed_order(scheme, order, tolerance):
    rows = await run_convergence_study(scheme, EPSILON, GRID_N, T_FINAL, TAUS)

    assert [r.tau for r in rows] == TAUS
    assert rows[0].observed_order is None
    for row in rows[1:]:
        assert row.observed_order == pytest.approx(order, abs=tolerance)


@pytest.mark.asyncio
@pytest.mark.integration
async def test_nondissipative_scheme_is_second_order():
    rows = await run_convergence_study("rk3-nondissipative", EPSILON, GRID_N, T_FINAL, TAUS)

    assert rows[-1].observed_order == pytest.approx(2.0, abs=0.2)


@pytest.mark.integration
def test_blocking_study_sorts_steps():
    rows = convergence_study("rk2-ssp", EPSILON, GRID_N, T_FINAL, list(reversed(TAUS)))

    assert [r.tau for r in rows] == TAUS
    assert rows[0].error > rows[1].error > rows[2].error


def test_observed_orders_formula():
    rows = observed_orders([0.1, 0.05, 0.025], [1e-2, 2.5e-3, 0.0])

    assert rows[1].observed_order == pytest.approx(2.0)
    assert rows[2].observed_order is None
