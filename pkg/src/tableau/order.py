"""Classical order conditions (rooted trees up to order 4) for explicit tableaux."""

import logging

import numpy as np

from src.config import config
from src.errors import Unsupported
from src.models.scheme import ButcherTableau

logger = logging.getLogger(__name__)

MAX_ORDER = 4


def order_residuals(t: ButcherTableau, target: int) -> dict[str, float]:
    """Residual of every order condition up to ``target``, keyed by tree label.

    With A the s x s stage matrix, b the weights and c the nodes:
        order 1: b.1 = 1
        order 2: b.c = 1/2
        order 3: b.c^2 = 1/3, b.Ac = 1/6
        order 4: b.c^3 = 1/4, (b*c).Ac = 1/8, b.Ac^2 = 1/12, b.AAc = 1/24
    """
    if not 1 <= target <= MAX_ORDER:
        raise Unsupported(f"order conditions are available for orders 1..{MAX_ORDER}, got {target}")

    A = t.lower_matrix()[: t.s, : t.s]
    b = np.asarray(t.b)
    c = np.asarray(t.c)
    Ac = A @ c

    conditions: list[tuple[int, str, float, float]] = [
        (1, "b", b.sum(), 1.0),
        (2, "bc", b @ c, 1.0 / 2.0),
        (3, "bc2", b @ c**2, 1.0 / 3.0),
        (3, "bAc", b @ Ac, 1.0 / 6.0),
        (4, "bc3", b @ c**3, 1.0 / 4.0),
        (4, "bcAc", (b * c) @ Ac, 1.0 / 8.0),
        (4, "bAc2", b @ (A @ c**2), 1.0 / 12.0),
        (4, "bAAc", b @ (A @ Ac), 1.0 / 24.0),
    ]
    return {label: float(value - exact) for order, label, value, exact in conditions if order <= target}


def verify_order(t: ButcherTableau, target: int) -> bool:
    """True iff every order condition up to ``target`` holds within ``config.order_tol``.

    Raises:
        Unsupported: For target > 4
    """
    residuals = order_residuals(t, target)
    failing = {label: r for label, r in residuals.items() if abs(r) > config.order_tol}
    if failing:
        logger.debug(f"'{t.name}' fails order {target}: {failing}")
    return not failing
