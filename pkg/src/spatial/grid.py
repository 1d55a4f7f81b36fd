"""Uniform periodic grid on [0, 2 pi] and immutable grid states."""

import math
from dataclasses import dataclass, field

import numpy as np

from src.errors import ConfigError

MIN_POINTS = 4


@dataclass(frozen=True)
class Grid:
    """N equispaced points x_j = j h, h = 2 pi / N, with periodic wraparound."""

    n: int
    h: float = field(init=False)

    def __post_init__(self) -> None:
        if self.n < MIN_POINTS:
            raise ConfigError(f"grid needs at least {MIN_POINTS} points, got {self.n}")
        object.__setattr__(self, "h", 2.0 * math.pi / self.n)

    def points(self) -> np.ndarray:
        return np.arange(self.n) * self.h


@dataclass(frozen=True, eq=False)
class State:
    """Grid samples of u. ``values`` is a read-only copy of the input."""

    values: np.ndarray
    grid: Grid

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64)
        if values.shape != (self.grid.n,):
            raise ConfigError(f"state must hold {self.grid.n} values, got shape {values.shape}")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, grid: Grid) -> "State":
        return cls(np.zeros(grid.n), grid)

    @classmethod
    def constant(cls, grid: Grid, value: float) -> "State":
        return cls(np.full(grid.n, value), grid)

    def with_values(self, values: np.ndarray) -> "State":
        return State(values, self.grid)


def grid_points(grid: Grid) -> np.ndarray:
    return grid.points()
