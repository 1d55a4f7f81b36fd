"""Periodic 1D finite differences for the Allen-Cahn equation."""

from src.spatial.grid import Grid, State, grid_points
from src.spatial.initial import initial_condition, load_state_csv, save_state_csv
from src.spatial.operators import (
    apply_laplacian,
    contraction,
    dirichlet_form,
    discrete_energy,
    first_difference,
    g_bound_holds,
    g_scalar,
    max_norm,
    nonlinearity,
    rhs,
)

__all__ = [
    "Grid",
    "State",
    "apply_laplacian",
    "contraction",
    "dirichlet_form",
    "discrete_energy",
    "first_difference",
    "g_bound_holds",
    "g_scalar",
    "grid_points",
    "initial_condition",
    "load_state_csv",
    "max_norm",
    "nonlinearity",
    "rhs",
    "save_state_csv",
]
