"""Time integration of the periodic Allen-Cahn problem with monitored bounds."""

import logging
import math

import numpy as np

from src.certificate.certify import certify_scheme, step_bounds
from src.config import config
from src.errors import (
    BoundViolation,
    ConfigError,
    InconsistentTableau,
    MbpRkError,
    NegativeD,
    NonPositiveLambda,
    SubdiagonalZero,
)
from src.integrator.stepping import allen_cahn_rhs, rk_step, stepping_form
from src.models.certificate import StabilityCertificate, StepBounds
from src.models.scheme import ButcherTableau, Scheme
from src.models.simulation import SimulationConfig, SimulationTrace, TraceRow
from src.spatial.grid import Grid, State
from src.spatial.initial import initial_condition
from src.spatial.operators import energy_values
from src.tableau.loader import nominal_order, resolve_scheme

logger = logging.getLogger(__name__)

# A remainder below this fraction of tau is folded into the last step.
LANDING_FRACTION = 1e-9


def scheme_of(cfg: SimulationConfig) -> Scheme:
    """Resolve the scheme of a config (preset name, tableau file, tableau or scheme)."""
    if isinstance(cfg.scheme, Scheme):
        return cfg.scheme
    if isinstance(cfg.scheme, ButcherTableau):
        t = cfg.scheme
        return Scheme(name=t.name, tableau=t, order=nominal_order(t))
    return resolve_scheme(cfg.scheme)


def step_count(t_final: float, tau: float) -> int:
    """Number of steps of size at most tau (up to rounding) needed to reach t_final."""
    if t_final <= 0.0:
        return 0
    return max(1, math.ceil(t_final / tau - LANDING_FRACTION))


def _certificate(scheme: Scheme, automatic: bool) -> StabilityCertificate | None:
    try:
        return certify_scheme(scheme)
    except InconsistentTableau as e:
        raise ConfigError(str(e)) from e
    except (SubdiagonalZero, NegativeD) as e:
        if automatic:
            raise ConfigError(f"'{scheme.name}' has no certificate, so no automatic step exists: {e}") from e
        logger.warning(f"'{scheme.name}' has no certificate ({e}); running without bounds")
        return None


def select_step(
    cfg: SimulationConfig, cert: StabilityCertificate | None, h: float
) -> tuple[float, StepBounds | None]:
    """Step size implied by ``cfg.tau`` and the bounds it was derived from.

    Raises:
        ConfigError: If an automatic step is requested but the scheme does not
            support it (not MBP, or lambda_min <= 0 for auto-energy)
    """
    if cert is None:
        if isinstance(cfg.tau, str):
            raise ConfigError(f"tau={cfg.tau} needs a certified scheme")
        return cfg.tau, None

    try:
        bounds = step_bounds(
            cert, cfg.epsilon, h, bound_mode=cfg.bound_mode, require_energy=cfg.tau == "auto-energy"
        )
    except NonPositiveLambda as e:
        raise ConfigError(
            f"tau=auto-energy is impossible for '{cert.name}': lambda_min = {e.lam!r} <= 0"
        ) from e

    if cfg.tau == "auto-mbp" or cfg.tau == "auto-energy":
        if not cert.mbp:
            raise ConfigError(f"tau={cfg.tau} needs an MBP scheme, '{cert.name}' is not (witness {cert.witness})")
        limit = bounds.tau_ssp if cfg.tau == "auto-mbp" else bounds.tau_energy
        assert limit is not None
        return config.safety_factor * limit, bounds

    if cert.mbp and cfg.tau > bounds.tau_ssp:
        logger.warning(f"tau={cfg.tau!r} exceeds the MBP bound {bounds.tau_ssp!r}")
    if bounds.tau_energy is not None and cfg.tau > bounds.tau_energy:
        logger.warning(f"tau={cfg.tau!r} exceeds the energy bound {bounds.tau_energy!r}")
    return cfg.tau, bounds


def _metadata(
    cfg: SimulationConfig,
    scheme: Scheme,
    grid: Grid,
    tau: float,
    cert: StabilityCertificate | None,
    bounds: StepBounds | None,
) -> dict[str, str]:
    metadata = {
        "scheme": scheme.name,
        "epsilon": repr(cfg.epsilon),
        "n": str(grid.n),
        "h": repr(grid.h),
        "tau": repr(tau),
        "tau_mode": cfg.tau if isinstance(cfg.tau, str) else "fixed",
        "bound_mode": cfg.bound_mode,
        "ic": cfg.ic,
        "t_final": repr(cfg.t_final),
    }
    if cert is not None:
        metadata |= {
            "mbp": str(cert.mbp),
            "lambda_min": repr(cert.lambda_min),
            "energy_dissipative": str(cert.energy_dissipative),
            "ssp_ratio": repr(cert.ssp_ratio),
        }
    if bounds is not None:
        metadata["tau_ssp"] = repr(bounds.tau_ssp)
        if bounds.tau_energy is not None:
            metadata["tau_energy"] = repr(bounds.tau_energy)
    return metadata


def simulate(cfg: SimulationConfig) -> SimulationTrace:
    """Integrate from t = 0 to ``cfg.t_final`` and record the monitors of every step.

    Under ``auto-mbp`` a max-norm breach of any step or stage raises; under
    ``auto-energy`` an energy increase above ``config.energy_slack`` raises as
    well. With a numeric tau breaches are only logged. The last step is
    shortened so the run ends exactly at t_final.

    Raises:
        ConfigError: Unknown scheme or initial condition, or an automatic tau
            the scheme does not support
        ParseError: Malformed tableau or state file
        BoundViolation: First breached monitor under an automatic tau
    """
    scheme = scheme_of(cfg)
    grid = Grid(cfg.n)
    u = initial_condition(cfg.ic, grid)

    automatic = isinstance(cfg.tau, str)
    cert = _certificate(scheme, automatic)
    tau, bounds = select_step(cfg, cert, grid.h)
    form = stepping_form(scheme, cert)
    g = allen_cahn_rhs(grid.h, cfg.epsilon)

    mbp_limit = 1.0 + config.mbp_slack
    energy_limit = config.energy_slack
    enforce_mbp = automatic
    enforce_energy = cfg.tau == "auto-energy"

    initial_norm = float(np.max(np.abs(u.values)))
    if automatic and initial_norm > 1.0:
        raise ConfigError(f"initial max norm {initial_norm!r} exceeds 1; the MBP bound does not apply")

    energy = energy_values(u.values, grid.h, cfg.epsilon)
    rows = [TraceRow(step=0, time=0.0, max_norm=initial_norm, energy=energy)]
    n_steps = step_count(cfg.t_final, tau)
    logger.info(
        f"Simulating '{scheme.name}': eps={cfg.epsilon}, N={grid.n}, tau={tau!r}, steps={n_steps}"
    )

    breaches = {"mbp": 0, "energy": 0}
    time = 0.0
    for step in range(1, n_steps + 1):
        next_time = cfg.t_final if step == n_steps else step * tau
        dt = next_time - time

        stage_norm = 0.0

        def watch(_: int, v: np.ndarray) -> None:
            nonlocal stage_norm
            stage_norm = max(stage_norm, float(np.max(np.abs(v))))

        u = rk_step(u, form, dt, cfg.epsilon, stage_hook=watch, g=g)
        norm = float(np.max(np.abs(u.values)))
        new_energy = energy_values(u.values, grid.h, cfg.epsilon)
        delta = new_energy - energy
        rows.append(
            TraceRow(
                step=step,
                time=next_time,
                max_norm=norm,
                energy=new_energy,
                energy_delta=delta,
                stage_max_norm=stage_norm,
            )
        )

        worst = max(norm, stage_norm)
        if not worst <= mbp_limit:
            if enforce_mbp:
                raise BoundViolation(step, "mbp", worst)
            if breaches["mbp"] == 0:
                logger.warning(f"Step {step}: max norm {worst!r} exceeds 1")
            breaches["mbp"] += 1
        if not delta <= energy_limit:
            if enforce_energy:
                raise BoundViolation(step, "energy", delta)
            if breaches["energy"] == 0:
                logger.warning(f"Step {step}: energy increased by {delta!r}")
            breaches["energy"] += 1

        time, energy = next_time, new_energy

    if any(breaches.values()):
        logger.warning(f"Monitor breaches: {breaches['mbp']} max-norm, {breaches['energy']} energy")
    logger.info(f"Finished '{scheme.name}' at t={time!r}, E={energy!r}")

    return SimulationTrace(rows=tuple(rows), metadata=_metadata(cfg, scheme, grid, tau, cert, bounds))


def final_state(cfg: SimulationConfig, u0: State | None = None) -> State:
    """State at ``cfg.t_final`` without monitors or certificate checks.

    Used by convergence studies, where tau is numeric and given.
    """
    if isinstance(cfg.tau, str):
        raise ConfigError("final_state needs a numeric tau")
    scheme = scheme_of(cfg)
    grid = Grid(cfg.n)
    u = u0 if u0 is not None else initial_condition(cfg.ic, grid)
    try:
        cert: StabilityCertificate | None = certify_scheme(scheme)
    except MbpRkError:
        cert = None
    form = stepping_form(scheme, cert)
    g = allen_cahn_rhs(grid.h, cfg.epsilon)

    n_steps = step_count(cfg.t_final, cfg.tau)
    time = 0.0
    for step in range(1, n_steps + 1):
        next_time = cfg.t_final if step == n_steps else step * cfg.tau
        u = rk_step(u, form, next_time - time, cfg.epsilon, g=g)
        time = next_time
    return u
