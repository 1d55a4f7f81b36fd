"""Empirical order of accuracy against a fine-step reference solution."""

import asyncio
import logging
import math

import numpy as np

from src.certificate.certify import certify_scheme, step_bounds
from src.errors import MbpRkError
from src.integrator.simulate import final_state, scheme_of
from src.models.scheme import ButcherTableau, Scheme
from src.models.simulation import SimulationConfig, StudyRow
from src.spatial.grid import Grid

logger = logging.getLogger(__name__)

# The reference step is min(taus) / REFERENCE_REFINEMENT.
REFERENCE_REFINEMENT = 16


def observed_orders(taus: list[float], errors: list[float]) -> list[StudyRow]:
    """Pair each step with its error and log(e_prev / e) / log(tau_prev / tau)."""
    rows: list[StudyRow] = []
    for i, (tau, error) in enumerate(zip(taus, errors)):
        order = None
        if i > 0 and error > 0.0 and errors[i - 1] > 0.0:
            order = math.log(errors[i - 1] / error) / math.log(taus[i - 1] / tau)
        rows.append(StudyRow(tau=tau, error=error, observed_order=order))
    return rows


def _warn_above_bound(cfg: SimulationConfig, taus: list[float]) -> None:
    try:
        cert = certify_scheme(scheme_of(cfg))
    except MbpRkError as e:
        logger.warning(f"No certificate for the study scheme: {e}")
        return
    if not cert.mbp:
        return
    bound = step_bounds(cert, cfg.epsilon, Grid(cfg.n).h, bound_mode=cfg.bound_mode).tau_ssp
    for tau in taus:
        if tau > bound:
            logger.warning(f"Study step {tau!r} exceeds the MBP bound {bound!r}")


async def run_convergence_study(
    scheme: str | ButcherTableau | Scheme,
    epsilon: float,
    n: int,
    t_final: float,
    taus: list[float],
    ic: str = "cosine:1",
) -> list[StudyRow]:
    """L-infinity errors at t_final for each step size, largest step first.

    The reference solution uses min(taus) / 16. All runs, reference included,
    execute concurrently in worker threads and share no state.

    Args:
        scheme: Preset name, tableau file path, tableau or scheme
        epsilon: Interface width
        n: Grid size
        t_final: Final time
        taus: Step sizes, typically halved from one to the next
        ic: Initial-condition specifier

    Returns:
        One StudyRow per step size, sorted by decreasing tau
    """
    taus = sorted(taus, reverse=True)
    base = SimulationConfig(scheme=scheme, epsilon=epsilon, n=n, t_final=t_final, tau=taus[-1], ic=ic)
    _warn_above_bound(base, taus)

    tau_ref = taus[-1] / REFERENCE_REFINEMENT
    configs = [base.model_copy(update={"tau": tau}) for tau in [tau_ref, *taus]]
    logger.info(f"Convergence study of {len(taus)} steps against tau_ref={tau_ref!r}")

    reference, *states = await asyncio.gather(*(asyncio.to_thread(final_state, cfg) for cfg in configs))
    errors = [float(np.max(np.abs(state.values - reference.values))) for state in states]
    return observed_orders(taus, errors)


def convergence_study(
    scheme: str | ButcherTableau | Scheme,
    epsilon: float,
    n: int,
    t_final: float,
    taus: list[float],
    ic: str = "cosine:1",
) -> list[StudyRow]:
    """Blocking wrapper around ``run_convergence_study``."""
    return asyncio.run(run_convergence_study(scheme, epsilon, n, t_final, taus, ic=ic))
