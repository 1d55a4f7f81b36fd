"""One-step maps of a scheme in each of its three representations.

These work on any state type supporting ``+`` and scalar ``*`` (floats, numpy
arrays) and any right-hand side ``g``. They are the reference recursions that
the integrator and the equivalence checks rely on.
"""

from typing import Callable, TypeVar

from src.models.scheme import ButcherTableau, CanonicalForm, ShuOsherForm

U = TypeVar("U")

StageHook = Callable[[int, U], None]


def butcher_step(t: ButcherTableau, u: U, tau: float, g: Callable[[U], U]) -> U:
    """v_i = u + tau sum_j a_ij G(v_j) for 1 <= i <= s; returns v_s."""
    derivatives = [g(u)]
    v = u
    for i in range(1, t.s + 1):
        v = u
        for j, a_ij in enumerate(t.a[i]):
            if a_ij != 0.0:
                v = v + (tau * a_ij) * derivatives[j]
        if i < t.s:
            derivatives.append(g(v))
    return v


def shu_osher_step(
    f: ShuOsherForm,
    u: U,
    tau: float,
    g: Callable[[U], U],
    stage_hook: StageHook | None = None,
) -> U:
    """v_i = sum_k (alpha_ik v_k + tau beta_ik G(v_k)); returns v_s.

    ``stage_hook(i, v_i)`` is called for every stage 1..s when given.
    """
    stages = [u]
    derivatives: list[U] = []
    for i in range(1, f.s + 1):
        # one evaluation of G per stage value
        derivatives.append(g(stages[i - 1]))
        v = None
        for k in range(i):
            alpha, beta = f.alpha[i][k], f.beta[i][k]
            if alpha != 0.0:
                term = alpha * stages[k]
                v = term if v is None else v + term
            if beta != 0.0:
                term = (tau * beta) * derivatives[k]
                v = term if v is None else v + term
        if v is None:
            v = 0.0 * u
        stages.append(v)
        if stage_hook is not None:
            stage_hook(i, v)
    return stages[-1]


def canonical_step(
    cf: CanonicalForm,
    u: U,
    tau: float,
    g: Callable[[U], U],
) -> U:
    """v_i = sum_k p_ik v_k + d_i tau G(v_{i-1}); returns v_s."""
    stages = [u]
    for i in range(1, cf.s + 1):
        v = (cf.d[i - 1] * tau) * g(stages[i - 1])
        for k, p_ik in enumerate(cf.p[i]):
            if p_ik != 0.0:
                v = v + p_ik * stages[k]
        stages.append(v)
    return stages[-1]


def one_step(
    scheme: ButcherTableau | ShuOsherForm | CanonicalForm,
    u: U,
    tau: float,
    g: Callable[[U], U],
) -> U:
    """Advance ``u`` by one step with whichever representation is given."""
    if isinstance(scheme, ButcherTableau):
        return butcher_step(scheme, u, tau, g)
    if isinstance(scheme, ShuOsherForm):
        return shu_osher_step(scheme, u, tau, g)
    return canonical_step(scheme, u, tau, g)
