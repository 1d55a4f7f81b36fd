"""Cyclic Jacobi eigenvalue iteration for small dense symmetric matrices."""

import logging

import numpy as np

from src.config import config
from src.errors import NotSymmetric, Unsupported

logger = logging.getLogger(__name__)


def _off_norm(m: np.ndarray) -> float:
    off = m - np.diag(np.diag(m))
    return float(np.sqrt(np.sum(off * off)))


def jacobi_eigenvalues(m: np.ndarray) -> np.ndarray:
    """All eigenvalues of a symmetric matrix, ascending.

    Sweeps over every pair (p, q), p < q, annihilating m[p, q] by a plane
    rotation, until the off-diagonal Frobenius norm drops below
    ``config.jacobi_tol`` times the Frobenius norm of the input.

    Raises:
        NotSymmetric: If m is not square or differs from its transpose by more than 1e-12
        Unsupported: If the dimension exceeds ``config.jacobi_max_dim``
    """
    a = np.array(m, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {a.shape}")
    if not np.allclose(a, a.T, rtol=0.0, atol=config.tableau_tol):
        raise NotSymmetric(f"matrix differs from its transpose by {np.abs(a - a.T).max()!r}")
    n = a.shape[0]
    if n > config.jacobi_max_dim:
        raise Unsupported(f"Jacobi solver is meant for n <= {config.jacobi_max_dim}, got {n}")

    a = (a + a.T) / 2.0
    threshold = config.jacobi_tol * float(np.linalg.norm(a))

    for sweep in range(config.jacobi_max_sweeps):
        if _off_norm(a) <= threshold:
            logger.debug(f"Jacobi converged after {sweep} sweeps")
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + np.sqrt(1.0 + theta * theta))
                else:
                    t = -1.0 / (-theta + np.sqrt(1.0 + theta * theta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c

                rotation = np.eye(n)
                rotation[p, p] = c
                rotation[q, q] = c
                rotation[p, q] = s
                rotation[q, p] = -s
                a = rotation.T @ a @ rotation
                a[p, q] = a[q, p] = 0.0
    else:
        logger.warning(
            f"Jacobi stopped after {config.jacobi_max_sweeps} sweeps, off-norm {_off_norm(a)!r}"
        )

    return np.sort(np.diag(a))


def smallest_eigenvalue(m: np.ndarray) -> float:
    """Smallest eigenvalue of a symmetric matrix (see ``jacobi_eigenvalues``).

    Example:
        >>> smallest_eigenvalue(np.array([[1.0, 0.5], [0.5, 2.0]]))  # (3 - sqrt(2)) / 2
        0.79289321881345...
    """
    return float(jacobi_eigenvalues(m)[0])
