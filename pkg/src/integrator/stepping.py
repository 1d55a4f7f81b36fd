"""Single time steps of the semi-discrete Allen-Cahn system."""

from typing import Callable

import numpy as np

from src.models.certificate import StabilityCertificate
from src.models.scheme import Scheme, ShuOsherForm, to_ragged
from src.spatial.grid import State
from src.spatial.operators import rhs_values
from src.tableau.algebra import beta_from_alpha, construct_shu_osher
from src.tableau.recursions import StageHook, shu_osher_step

RightHandSide = Callable[[np.ndarray], np.ndarray]


def allen_cahn_rhs(h: float, epsilon: float) -> RightHandSide:
    def g(v: np.ndarray) -> np.ndarray:
        return rhs_values(v, h, epsilon)

    return g


def euler_step(u: State, tau: float, epsilon: float) -> State:
    """u + tau G(u)."""
    return u.with_values(u.values + tau * rhs_values(u.values, u.grid.h, epsilon))


def rk_step(
    u: State,
    f: ShuOsherForm,
    tau: float,
    epsilon: float,
    stage_hook: StageHook | None = None,
    g: RightHandSide | None = None,
) -> State:
    """One step of the Shu-Osher recursion v_i = sum_k (alpha_ik v_k + tau beta_ik G(v_k)).

    Args:
        u: State at the start of the step
        f: Shu-Osher form of the scheme
        tau: Step size
        epsilon: Interface width
        stage_hook: Called as ``stage_hook(i, v_i)`` with the raw stage arrays
        g: Right-hand side replacing the Allen-Cahn G, e.g. a linear test problem

    Returns:
        v_s as a new State
    """
    g = g or allen_cahn_rhs(u.grid.h, epsilon)
    result = shu_osher_step(f, np.array(u.values), tau, g, stage_hook=stage_hook)
    return u.with_values(result)


def stepping_form(scheme: Scheme, cert: StabilityCertificate | None = None) -> ShuOsherForm:
    """Shu-Osher form used to advance ``scheme``.

    The native form when the scheme carries one, the non-negative constructed
    form for MBP schemes, otherwise alpha_i0 = 1 which makes beta the Butcher
    matrix itself.
    """
    if scheme.shu_osher is not None:
        return scheme.shu_osher
    if cert is not None and cert.mbp:
        return construct_shu_osher(scheme.tableau)
    alpha = [()] + [(1.0,) + (0.0,) * (i - 1) for i in range(1, scheme.tableau.s + 1)]
    return beta_from_alpha(scheme.tableau, to_ragged(alpha))
