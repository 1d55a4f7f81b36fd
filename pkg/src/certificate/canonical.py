"""Reduction of a scheme to the one-derivative-per-stage canonical form.

Each stage i of the canonical form reads

    v_i = sum_k p_ik v_k + d_i tau G(v_{i-1}),

so it carries exactly one derivative evaluation, at the previous stage.
"""

import logging
import math

from src.config import config
from src.errors import NegativeD, NotEliminable, SubdiagonalZero
from src.models.scheme import ButcherTableau, CanonicalForm, ShuOsherForm, to_ragged

logger = logging.getLogger(__name__)


def _check_multipliers(d: list[float]) -> None:
    for stage, value in enumerate(d, start=1):
        if value <= 0.0:
            raise NegativeD(stage, value)


def to_canonical(t: ButcherTableau) -> CanonicalForm:
    """Choose the Shu-Osher alphas that cancel every derivative term but the last.

    For stage i the alphas solve a_ik = sum_{l=k+1}^{i-1} a_lk alpha_il for
    k = i-2 down to 0 by back-substitution, alpha_i0 closes the row sum, and
    d_i = a_{i,i-1}.

    Raises:
        SubdiagonalZero: If a sub-diagonal entry a_{k+1,k} vanishes
        NegativeD: If some d_i is not positive
    """
    floor = config.positivity_floor
    for i in range(1, t.s + 1):
        if abs(t.a[i][i - 1]) <= floor:
            raise SubdiagonalZero(i)

    p: list[tuple[float, ...]] = [()]
    for i in range(1, t.s + 1):
        alpha = [0.0] * i
        for k in range(i - 2, -1, -1):
            known = math.fsum(t.a[l][k] * alpha[l] for l in range(k + 2, i))
            alpha[k + 1] = (t.a[i][k] - known) / t.a[k + 1][k]
        alpha[0] = 1.0 - math.fsum(alpha[1:])
        p.append(tuple(alpha))

    d = [t.a[i][i - 1] for i in range(1, t.s + 1)]
    _check_multipliers(d)
    return CanonicalForm(s=t.s, p=to_ragged(p), d=tuple(d), name=t.name)


def canonicalize_general(f: ShuOsherForm) -> CanonicalForm:
    """Rewrite a Shu-Osher form so that stage i only references G(v_{i-1}).

    Stages are processed in order. A term tau beta_ik G(v_k) with k < i-1 is
    replaced using the already canonical stage k+1:

        tau G(v_k) = (v_{k+1} - sum_j p_{k+1,j} v_j) / d_{k+1},

    which leaves row sums unchanged and may make some p_ij negative.

    Raises:
        NotEliminable: If the d_{k+1} needed for a substitution is zero
        NegativeD: If some resulting d_i is not positive
    """
    floor = config.positivity_floor
    p: list[tuple[float, ...]] = [()]
    d: list[float] = []

    for i in range(1, f.s + 1):
        row = list(f.alpha[i])
        beta = list(f.beta[i])
        for k in range(i - 1):
            if abs(beta[k]) <= floor:
                continue
            d_next = d[k]
            if abs(d_next) <= floor:
                raise NotEliminable(k + 1)
            scale = beta[k] / d_next
            row[k + 1] += scale
            for j, p_next in enumerate(p[k + 1]):
                row[j] -= scale * p_next
            beta[k] = 0.0
            logger.debug(f"Stage {i}: eliminated G(v_{k}) through stage {k + 1}")
        p.append(tuple(row))
        d.append(beta[i - 1])

    _check_multipliers(d)
    return CanonicalForm(s=f.s, p=to_ragged(p), d=tuple(d), name=f.name)
