"""Butcher <-> Shu-Osher algebra and the SSP positivity tests.

Indices follow the ragged convention of ``src.models.scheme``: ``a[i][k]`` for
``0 <= k < i <= s`` with the weights stored as row ``s``.
"""

import logging
import math

from src.config import config
from src.errors import InconsistentTableau, NonApplicable, PositivityViolated, ShapeMismatch
from src.models.scheme import (
    ButcherTableau,
    CanonicalForm,
    Ragged,
    ShuOsherForm,
    SspVerdict,
    Violation,
    Witness,
    ragged_shape,
    to_ragged,
)

logger = logging.getLogger(__name__)


# ============================================================================
# Consistency
# ============================================================================


def validate_tableau(t: ButcherTableau) -> list[Violation]:
    """List the violated consistency conditions of a tableau.

    Checks c_i = sum_j a_ij for 1 <= i <= s-1 and sum_j b_j = 1, both to
    ``config.tableau_tol``. Violations are returned, never raised.

    Args:
        t: Tableau to check

    Returns:
        One Violation per failing row; empty when the tableau is consistent
    """
    tol = config.tableau_tol
    violations: list[Violation] = []

    if abs(t.c[0]) > tol:
        violations.append(
            Violation(row=0, residual=t.c[0], message=f"c_0 = {t.c[0]!r}, expected 0")
        )

    for i in range(1, t.s):
        residual = t.c[i] - math.fsum(t.a[i])
        if abs(residual) > tol:
            violations.append(
                Violation(
                    row=i,
                    residual=residual,
                    message=f"row {i}: c_{i} differs from the row sum by {residual!r}",
                )
            )

    weight_sum = math.fsum(t.b)
    if abs(weight_sum - 1.0) > tol:
        violations.append(
            Violation(
                row=t.s,
                residual=weight_sum - 1.0,
                message=f"b-row sums to {weight_sum!r}",
            )
        )

    return violations


def _require_consistent(t: ButcherTableau) -> None:
    violations = validate_tableau(t)
    if violations:
        details = "; ".join(v.message for v in violations)
        raise InconsistentTableau(f"tableau '{t.name}' is inconsistent: {details}")


# ============================================================================
# Butcher -> Shu-Osher
# ============================================================================


def beta_from_alpha(t: ButcherTableau, alpha: Ragged) -> ShuOsherForm:
    """Complete a choice of alpha into a Shu-Osher form of ``t``.

    beta_ik = a_ik - sum_{j=k+1}^{i-1} alpha_ij a_jk. No sign is imposed on the
    result; callers decide whether the form is admissible.

    Args:
        t: Source tableau
        alpha: Ragged rows 0..s with the same shape as ``t.a``

    Returns:
        ShuOsherForm carrying ``alpha`` and the derived beta

    Raises:
        ShapeMismatch: If alpha's ragged shape differs from the tableau's
    """
    alpha = to_ragged(alpha)
    if ragged_shape(alpha) != ragged_shape(t.a):
        raise ShapeMismatch(
            f"alpha has row lengths {ragged_shape(alpha)}, tableau has {ragged_shape(t.a)}"
        )

    beta = [()]
    for i in range(1, t.s + 1):
        row = tuple(
            t.a[i][k] - math.fsum(alpha[i][j] * t.a[j][k] for j in range(k + 1, i))
            for k in range(i)
        )
        beta.append(row)

    return ShuOsherForm(s=t.s, alpha=alpha, beta=to_ragged(beta), name=t.name)


def construct_shu_osher(t: ButcherTableau) -> ShuOsherForm:
    """Build a Shu-Osher form with non-negative coefficients from a positive tableau.

    delta is the smallest ratio a_ik / sum_{j=k+1}^{i-1} a_jk over the pairs
    whose sum is non-empty; every alpha_ij (j >= 1) of stage i is then
    min{delta/2, 1/(2(i-1))} and alpha_i0 = 1 - (i-1) alpha_i1, which keeps every
    beta positive.

    Raises:
        PositivityViolated: If some a_ik is not above the positivity floor
    """
    floor = config.positivity_floor
    for i in range(1, t.s + 1):
        for k, value in enumerate(t.a[i]):
            if value <= floor:
                raise PositivityViolated(i, k, value)

    delta = math.inf
    for i in range(2, t.s + 1):
        for k in range(i - 1):
            denominator = math.fsum(t.a[j][k] for j in range(k + 1, i))
            delta = min(delta, t.a[i][k] / denominator)

    alpha: list[tuple[float, ...]] = [(), (1.0,)]
    for i in range(2, t.s + 1):
        off = min(delta / 2.0, 1.0 / (2.0 * (i - 1)))
        alpha.append((1.0 - (i - 1) * off,) + (off,) * (i - 1))

    form = beta_from_alpha(t, to_ragged(alpha))
    logger.debug(f"Constructed Shu-Osher form of '{t.name}' with delta={delta!r}")
    return form


# ============================================================================
# Shu-Osher -> Butcher
# ============================================================================


def shu_osher_to_butcher(f: ShuOsherForm) -> ButcherTableau:
    """Recover the Butcher tableau of a Shu-Osher form.

    Forward recursion a_ik = beta_ik + sum_{j=k+1}^{i-1} alpha_ij a_jk; the nodes
    are the row sums.
    """
    a: list[tuple[float, ...]] = [()]
    for i in range(1, f.s + 1):
        row = tuple(
            f.beta[i][k] + math.fsum(f.alpha[i][j] * a[j][k] for j in range(k + 1, i))
            for k in range(i)
        )
        a.append(row)

    c = (0.0,) + tuple(math.fsum(a[i]) for i in range(1, f.s))
    return ButcherTableau(s=f.s, a=to_ragged(a), c=c, name=f.name)


def canonical_as_shu_osher(cf: CanonicalForm) -> ShuOsherForm:
    """View a canonical form as a Shu-Osher form: alpha = p, beta_{i,i-1} = d_i."""
    beta = [()] + [(0.0,) * (i - 1) + (cf.d[i - 1],) for i in range(1, cf.s + 1)]
    return ShuOsherForm(s=cf.s, alpha=cf.p, beta=to_ragged(beta), name=cf.name)


# ============================================================================
# SSP tests
# ============================================================================


def ssp_check(t: ButcherTableau) -> SspVerdict:
    """Decide the RK-SSP condition for a tableau with non-zero sub-diagonal.

    The scheme admits a Shu-Osher form with alpha, beta >= 0 exactly when every
    entry of the strictly lower-triangular part (b-row included) is positive.
    On failure the witness is the first non-positive entry in row-major order.

    Args:
        t: Consistent tableau

    Returns:
        SspVerdict with the constructed Shu-Osher form on success

    Raises:
        InconsistentTableau: If ``validate_tableau`` reports violations
        NonApplicable: If a sub-diagonal entry a[i][i-1] vanishes

    Example:
        >>> ssp_check(PRESETS["classic-rk4"].tableau).witness
        Witness(row=2, col=0, value=0.0, kind='non_positive_entry')
    """
    _require_consistent(t)
    floor = config.positivity_floor

    for i in range(1, t.s + 1):
        if abs(t.a[i][i - 1]) <= floor:
            raise NonApplicable(i, i - 1)

    for i in range(1, t.s + 1):
        for k, value in enumerate(t.a[i]):
            if value <= floor:
                logger.info(f"'{t.name}' is not SSP: a[{i}][{k}] = {value!r}")
                return SspVerdict(is_ssp=False, witness=Witness(row=i, col=k, value=value))

    return SspVerdict(is_ssp=True, constructed_form=construct_shu_osher(t))


def check_shu_osher(f: ShuOsherForm) -> SspVerdict:
    """Check a given Shu-Osher form against the RK-SSP condition.

    Requires alpha >= 0, beta >= 0 and beta_ik = 0 wherever alpha_ik = 0. The
    witness kind tells which clause failed.

    Raises:
        InconsistentTableau: If some alpha row does not sum to 1
    """
    tol = config.tableau_tol
    for i, residual in enumerate(f.row_sum_residuals(), start=1):
        if residual > tol:
            raise InconsistentTableau(f"alpha row {i} of '{f.name}' sums to 1 + {residual!r}")

    floor = config.positivity_floor
    for i in range(1, f.s + 1):
        for k in range(i):
            alpha, beta = f.alpha[i][k], f.beta[i][k]
            witness = None
            if alpha < -floor:
                witness = Witness(row=i, col=k, value=alpha, kind="negative_alpha")
            elif beta < -floor:
                witness = Witness(row=i, col=k, value=beta, kind="negative_beta")
            elif abs(alpha) <= floor and abs(beta) > floor:
                witness = Witness(row=i, col=k, value=beta, kind="beta_without_alpha")
            if witness is not None:
                return SspVerdict(is_ssp=False, witness=witness)

    return SspVerdict(is_ssp=True, constructed_form=f)


def ssp_ratio(f: ShuOsherForm) -> float:
    """min alpha_ik / beta_ik over the form; a vanishing beta contributes infinity."""
    floor = config.positivity_floor
    ratio = math.inf
    for i in range(1, f.s + 1):
        for k in range(i):
            if f.beta[i][k] > floor:
                ratio = min(ratio, f.alpha[i][k] / f.beta[i][k])
    return ratio
