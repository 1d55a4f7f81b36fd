"""Energy discriminant, stability certificates and admissible time steps.

For a canonical form with multipliers d_j the upper-triangular matrix

    Phi_ij = sum_{k=0}^{i-1} p_jk / d_j,   1 <= i <= j <= s,

is symmetrized into the energy discriminant Delta_E = (Phi + Phi^T) / 2. A
positive smallest eigenvalue lambda of Delta_E certifies that the discrete
energy does not increase for tau <= min{lambda / (1/eps + 2 eps / h^2), tau_SSP}.
Matrices are stored 0-based (entry [i][j] belongs to stages i+1, j+1).
"""

import logging
import math

import numpy as np

from src.certificate.canonical import canonicalize_general, to_canonical
from src.certificate.eigen import smallest_eigenvalue
from src.config import config
from src.errors import InconsistentTableau, NegativeD, NonPositiveLambda
from src.models.certificate import BoundMode, StabilityCertificate, StepBounds
from src.models.scheme import ButcherTableau, CanonicalForm, Scheme, ShuOsherForm
from src.tableau.algebra import (
    canonical_as_shu_osher,
    check_shu_osher,
    ssp_check,
    ssp_ratio,
    validate_tableau,
)
from src.tableau.presets import RK4_5STAGE_COEFFICIENTS

logger = logging.getLogger(__name__)


def _as_tuple(m: np.ndarray) -> tuple[tuple[float, ...], ...]:
    return tuple(tuple(float(x) for x in row) for row in m)


# ============================================================================
# Energy discriminant
# ============================================================================


def phi_matrix(cf: CanonicalForm) -> np.ndarray:
    """Upper-triangular Phi of a canonical form; its diagonal is 1/d_i.

    Raises:
        NegativeD: If some d_i is not positive
    """
    for stage, value in enumerate(cf.d, start=1):
        if value <= 0.0:
            raise NegativeD(stage, value)

    phi = np.zeros((cf.s, cf.s))
    for j in range(1, cf.s + 1):
        partial = np.cumsum(cf.p[j])
        for i in range(1, j + 1):
            phi[i - 1, j - 1] = partial[i - 1] / cf.d[j - 1]
    return phi


def energy_discriminant(phi: np.ndarray) -> np.ndarray:
    return (phi + phi.T) / 2.0


def printed_phi_rk4_5stage() -> np.ndarray:
    """Phi of the five-stage fourth-order scheme exactly as it is usually printed.

    The printed matrix leaves the off-diagonal entries of the last column
    unscaled by 1/d_5. Its smallest symmetric eigenvalue is about 1.706; the
    certificate itself uses ``phi_matrix``.
    """
    k = RK4_5STAGE_COEFFICIENTS
    d5 = k["d54"]
    p50 = -k["d53"] * k["p40"] / k["d4"]
    return np.array(
        [
            [1 / k["d1"], k["p20"] / k["d2"], k["p30"] / k["d3"], k["p40"] / k["d4"], p50],
            [0.0, 1 / k["d2"], k["p30"] / k["d3"], k["p40"] / k["d4"], p50],
            [0.0, 0.0, 1 / k["d3"], k["p40"] / k["d4"], k["p52"] + p50],
            [0.0, 0.0, 0.0, 1 / k["d4"], k["p52"] + k["p53"] - k["d53"] / k["d4"]],
            [0.0, 0.0, 0.0, 0.0, 1 / d5],
        ]
    )


# ============================================================================
# Certificates
# ============================================================================


def certify(
    t: ButcherTableau,
    shu_osher: ShuOsherForm | None = None,
    name: str | None = None,
) -> StabilityCertificate:
    """Certify a scheme for maximum-bound preservation and energy dissipation.

    The MBP verdict comes from ``ssp_check``. Phi is built from the canonical
    form of ``shu_osher`` when the scheme is given natively in Shu-Osher form,
    otherwise from ``to_canonical(t)``; a failed MBP verdict does not stop it.
    ssp_ratio is the best min alpha/beta over the admissible Shu-Osher forms at
    hand (the constructed one, the canonical one, the native one), 0 when none
    is admissible.

    Args:
        t: Consistent Butcher tableau
        shu_osher: Optional native Shu-Osher form of the same scheme
        name: Report name, defaults to the tableau's

    Returns:
        StabilityCertificate

    Raises:
        InconsistentTableau: If ``validate_tableau`` reports violations
        SubdiagonalZero: If a sub-diagonal entry vanishes
        NegativeD: If a canonical multiplier is not positive
    """
    violations = validate_tableau(t)
    if violations:
        details = "; ".join(v.message for v in violations)
        raise InconsistentTableau(f"tableau '{t.name}' is inconsistent: {details}")
    name = name or t.name

    canonical = canonicalize_general(shu_osher) if shu_osher is not None else to_canonical(t)
    phi = phi_matrix(canonical)
    delta_e = energy_discriminant(phi)
    lam = smallest_eigenvalue(delta_e)

    verdict = ssp_check(t)
    ratios: list[float] = []
    if verdict.is_ssp and verdict.constructed_form is not None:
        ratios.append(ssp_ratio(verdict.constructed_form))
    for candidate in (canonical_as_shu_osher(canonical), shu_osher):
        if candidate is not None and check_shu_osher(candidate).is_ssp:
            ratios.append(ssp_ratio(candidate))
    best_ratio = max(ratios) if verdict.is_ssp and ratios else 0.0

    tol = config.dissipation_tol
    dissipative = lam > tol
    indeterminate = abs(lam) <= tol
    if indeterminate:
        logger.warning(f"'{name}': lambda_min = {lam!r} is indeterminate at tolerance {tol}")

    logger.info(
        f"Certified '{name}': mbp={verdict.is_ssp}, lambda_min={lam:.6g}, "
        f"ssp_ratio={best_ratio:.6g}"
    )
    return StabilityCertificate(
        name=name,
        mbp=verdict.is_ssp,
        witness=verdict.witness,
        phi=_as_tuple(phi),
        delta_e=_as_tuple(delta_e),
        lambda_min=lam,
        ssp_ratio=best_ratio,
        energy_dissipative=dissipative,
        indeterminate=indeterminate,
        energy_guaranteed=dissipative and verdict.is_ssp,
        canonical=canonical,
    )


def certify_scheme(scheme: Scheme) -> StabilityCertificate:
    return certify(scheme.tableau, shu_osher=scheme.shu_osher, name=scheme.name)


# ============================================================================
# Step bounds
# ============================================================================


def forward_euler_bounds(epsilon: float, h: float) -> tuple[float, float]:
    """(safe, printed) forward-Euler MBP bounds: min{h^2/(4 eps), eps/4} and min{4h^2/eps, eps/4}."""
    return min(h * h / (4.0 * epsilon), epsilon / 4.0), min(4.0 * h * h / epsilon, epsilon / 4.0)


def step_bounds(
    cert: StabilityCertificate,
    epsilon: float,
    h: float,
    bound_mode: BoundMode = "safe",
    require_energy: bool = False,
) -> StepBounds:
    """All time-step bounds of a certificate for interface width ``epsilon`` and spacing ``h``.

    tau_ssp = ssp_ratio * tau0 with tau0 chosen by ``bound_mode``;
    tau_lambda = lambda / (1/eps + 2 eps/h^2); tau_energy = min{tau_lambda, tau_ssp}.

    Raises:
        NonPositiveLambda: If ``require_energy`` and lambda_min is not positive
    """
    tau0_safe, tau0_paper = forward_euler_bounds(epsilon, h)
    tau0 = tau0_safe if bound_mode == "safe" else tau0_paper
    tau_ssp = cert.ssp_ratio * tau0 if cert.ssp_ratio > 0.0 else 0.0

    tau_lambda = None
    tau_energy = None
    if cert.energy_dissipative:
        tau_lambda = cert.lambda_min / (1.0 / epsilon + 2.0 * epsilon / (h * h))
        tau_energy = min(tau_lambda, tau_ssp)
    elif require_energy:
        raise NonPositiveLambda(cert.lambda_min)

    return StepBounds(
        epsilon=epsilon,
        h=h,
        bound_mode=bound_mode,
        tau0_safe=tau0_safe,
        tau0_paper=tau0_paper,
        tau_ssp=tau_ssp if math.isfinite(tau_ssp) else tau0,
        tau_lambda=tau_lambda,
        tau_energy=tau_energy,
    )
