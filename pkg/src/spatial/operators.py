"""Matrix-free periodic finite-difference operators and the discrete Allen-Cahn energy.

D1 is the backward difference (D1 u)_j = (u_j - u_{j-1}) / h and the Laplacian
is D = -D1^T D1, i.e. (D u)_j = (u_{j-1} - 2 u_j + u_{j+1}) / h^2. All indices
wrap around. Functions suffixed ``_values`` work on raw arrays and are what the
integrator calls on every stage; the others take and return ``State``.
"""

import math

import numexpr
import numpy as np

from src.config import config
from src.spatial.grid import Grid, State

# ============================================================================
# Array kernels
# ============================================================================


def laplacian_values(u: np.ndarray, h: float) -> np.ndarray:
    return (np.roll(u, 1) - 2.0 * u + np.roll(u, -1)) / (h * h)


def first_difference_values(u: np.ndarray, h: float) -> np.ndarray:
    return (u - np.roll(u, 1)) / h


def nonlinearity_values(u: np.ndarray) -> np.ndarray:
    """f(u) = u - u^3 = -F'(u)."""
    return numexpr.evaluate("u - u * u * u", local_dict={"u": np.asarray(u, dtype=np.float64)})


def potential_values(u: np.ndarray) -> np.ndarray:
    """Double-well F(u) = (1 - u^2)^2 / 4."""
    return numexpr.evaluate(
        "(1.0 - u * u) * (1.0 - u * u) / 4.0", local_dict={"u": np.asarray(u, dtype=np.float64)}
    )


def rhs_values(u: np.ndarray, h: float, epsilon: float) -> np.ndarray:
    """G(u) = eps D u + f(u) / eps."""
    return epsilon * laplacian_values(u, h) + nonlinearity_values(u) / epsilon


def energy_values(u: np.ndarray, h: float, epsilon: float) -> float:
    gradient = first_difference_values(u, h)
    quadratic = 0.5 * epsilon * math.fsum(gradient * gradient)
    return quadratic + math.fsum(potential_values(u)) / epsilon


# ============================================================================
# State operators
# ============================================================================


def apply_laplacian(u: State) -> State:
    """D u with the periodic three-point stencil.

    Example:
        >>> grid = Grid(4)
        >>> apply_laplacian(State(np.array([1.0, 0.0, -1.0, 0.0]), grid)).values * grid.h**2
        array([-2.,  0.,  2.,  0.])
    """
    return u.with_values(laplacian_values(u.values, u.grid.h))


def first_difference(u: State) -> State:
    return u.with_values(first_difference_values(u.values, u.grid.h))


def nonlinearity(u: State) -> State:
    return u.with_values(nonlinearity_values(u.values))


def rhs(u: State, epsilon: float) -> State:
    return u.with_values(rhs_values(u.values, u.grid.h, epsilon))


def discrete_energy(u: State, epsilon: float) -> float:
    """E(u) = (eps/2) ||D1 u||^2 + (1/eps) sum_j F(u_j).

    The quadratic part equals -(eps/2) u^T D u but is summed as a sum of
    squares so it cannot go negative in floating point.
    """
    return energy_values(u.values, u.grid.h, epsilon)


def max_norm(u: State) -> float:
    return float(np.max(np.abs(u.values)))


def dirichlet_form(u: State, v: State) -> float:
    """u^T D v."""
    return float(np.dot(u.values, laplacian_values(v.values, v.grid.h)))


def contraction(v: State, alpha: float) -> State:
    """(I + h^2 D / alpha) v, a max-norm contraction for alpha >= 2."""
    h = v.grid.h
    return v.with_values(v.values + (h * h / alpha) * laplacian_values(v.values, h))


def laplacian_eigenvalue(grid: Grid, k: int) -> float:
    """lambda_k = -(2 - 2 cos(k h)) / h^2, the eigenvalue of D for the k-th Fourier mode."""
    return -(2.0 - 2.0 * math.cos(k * grid.h)) / (grid.h * grid.h)


def inverse_inequality_bound(u: State) -> float:
    """C u^T u / h^2 with C = ``config.inverse_inequality_constant``; bounds -u^T D u."""
    h = u.grid.h
    return config.inverse_inequality_constant * float(np.dot(u.values, u.values)) / (h * h)


# ============================================================================
# Scalar lemma
# ============================================================================


def g_scalar(x: np.ndarray | float, a: float, c: float) -> np.ndarray:
    """g(x) = a x + c (x - x^3)."""
    x = np.asarray(x, dtype=np.float64)
    return a * x + c * nonlinearity_values(x)


def g_bound_holds(a: float, c: float, samples: int = 20001, slack: float = 1e-12) -> bool:
    """Whether max_{|x| <= 1} |a x + c (x - x^3)| <= a, by dense sampling plus critical points.

    The bound is expected for a > 0 and -4a <= c <= a/2.
    """
    x = np.linspace(-1.0, 1.0, samples)
    if c != 0.0:
        # g'(x) = a + c - 3 c x^2
        critical = (a + c) / (3.0 * c)
        if 0.0 <= critical <= 1.0:
            root = math.sqrt(critical)
            x = np.concatenate([x, [-root, root]])
    return float(np.max(np.abs(g_scalar(x, a, c)))) <= a + slack
