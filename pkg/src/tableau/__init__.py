"""Explicit Runge-Kutta schemes: Butcher/Shu-Osher algebra, SSP tests, order conditions."""

from src.tableau.algebra import (
    beta_from_alpha,
    canonical_as_shu_osher,
    check_shu_osher,
    construct_shu_osher,
    shu_osher_to_butcher,
    ssp_check,
    ssp_ratio,
    validate_tableau,
)
from src.tableau.loader import load_tableau, resolve_scheme
from src.tableau.order import verify_order
from src.tableau.presets import PRESETS
from src.tableau.recursions import one_step

__all__ = [
    "PRESETS",
    "beta_from_alpha",
    "canonical_as_shu_osher",
    "check_shu_osher",
    "construct_shu_osher",
    "load_tableau",
    "one_step",
    "resolve_scheme",
    "shu_osher_to_butcher",
    "ssp_check",
    "ssp_ratio",
    "validate_tableau",
    "verify_order",
]
