"""Initial-condition specifiers and single-column state CSV files.

Supported specifiers:

    random:<seed>   uniform samples in [-1, 1] from numpy's PCG64, 64-bit seed
    cosine:<k>      u_j = cos(k x_j)
    file:<path>     single-column CSV holding exactly N values
"""

import logging
import warnings
from pathlib import Path

import numpy as np

from src.errors import ConfigError, ParseError
from src.spatial.grid import Grid, State

logger = logging.getLogger(__name__)

MAX_SEED = 2**64


def random_state(grid: Grid, seed: int) -> State:
    if not 0 <= seed < MAX_SEED:
        raise ConfigError(f"seed must fit in 64 bits, got {seed}")
    rng = np.random.Generator(np.random.PCG64(seed))
    return State(rng.uniform(-1.0, 1.0, grid.n), grid)


def cosine_state(grid: Grid, k: int) -> State:
    return State(np.cos(k * grid.points()), grid)


def initial_condition(spec: str, grid: Grid) -> State:
    """Build the initial state named by ``spec``.

    Raises:
        ConfigError: If the specifier is unknown or its argument is invalid
        ParseError: If a ``file:`` state cannot be parsed
    """
    kind, sep, argument = spec.partition(":")
    if not sep or not argument:
        raise ConfigError(f"initial condition must look like kind:value, got '{spec}'")

    if kind == "random":
        try:
            seed = int(argument)
        except ValueError as e:
            raise ConfigError(f"random seed must be an integer, got '{argument}'") from e
        return random_state(grid, seed)

    if kind == "cosine":
        try:
            k = int(argument)
        except ValueError as e:
            raise ConfigError(f"cosine mode must be an integer, got '{argument}'") from e
        return cosine_state(grid, k)

    if kind == "file":
        values = load_state_csv(argument)
        if values.shape[0] != grid.n:
            raise ConfigError(f"{argument} holds {values.shape[0]} values but the grid has {grid.n}")
        logger.info(f"Loaded initial state from {argument}")
        return State(values, grid)

    raise ConfigError(f"unknown initial condition '{kind}' (expected random, cosine or file)")


def save_state_csv(state: State, path: Path | str) -> None:
    np.savetxt(path, state.values, fmt="%.17g")


def load_state_csv(path: Path | str) -> np.ndarray:
    """Read a single-column CSV of reals ('#' starts a comment).

    Raises:
        ParseError: If the file is unreadable, empty or not a single numeric column
    """
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UserWarning)
            values = np.loadtxt(path, dtype=np.float64, comments="#", delimiter=",", ndmin=2)
    except OSError as e:
        raise ParseError(f"cannot read state file {path}: {e}") from e
    except ValueError as e:
        raise ParseError(f"malformed state file {path}: {e}") from e

    if values.size == 0:
        raise ParseError(f"state file {path} holds no values")
    if values.shape[1] != 1:
        raise ParseError(f"state file {path} must have one column, found {values.shape[1]}")
    return values[:, 0]
