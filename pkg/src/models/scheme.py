"""Pydantic schemas for explicit Runge-Kutta schemes and their rewritings.

All ragged coefficient arrays share one convention: row ``i`` holds the
coefficients of stage ``i`` for ``0 <= i <= s`` and has exactly ``i`` entries,
so row 0 is always empty and row ``s`` produces the new time level. For a
Butcher tableau, row ``s`` is the weight vector ``b``.
"""

from typing import Literal, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

Ragged = tuple[tuple[float, ...], ...]


def _check_ragged(rows: Ragged, s: int, label: str) -> None:
    if len(rows) != s + 1:
        raise ValueError(f"{label} must have {s + 1} rows (0..s), got {len(rows)}")
    for i, row in enumerate(rows):
        if len(row) != i:
            raise ValueError(f"{label} row {i} must have {i} entries, got {len(row)}")


def ragged_shape(rows: Ragged) -> tuple[int, ...]:
    """Row lengths of a ragged array."""
    return tuple(len(row) for row in rows)


def to_ragged(rows: Sequence[Sequence[float]]) -> Ragged:
    return tuple(tuple(float(x) for x in row) for row in rows)


class ButcherTableau(BaseModel):
    """Explicit Runge-Kutta scheme in Butcher form with the b-row stored as row s of ``a``.

    Construction only checks the ragged shape; the consistency of ``c`` and of
    the weights is reported by ``validate_tableau`` as data.
    """

    model_config = ConfigDict(frozen=True)

    s: int = Field(gt=0, description="Number of stages")
    a: Ragged = Field(description="Strictly lower-triangular rows 0..s, row s holds b")
    c: tuple[float, ...] = Field(description="Nodes c_0..c_{s-1}")
    name: str = Field(default="unnamed", description="Display name")

    @model_validator(mode="after")
    def _shape(self) -> "ButcherTableau":
        _check_ragged(self.a, self.s, "a")
        if len(self.c) != self.s:
            raise ValueError(f"c must have {self.s} entries, got {len(self.c)}")
        return self

    @classmethod
    def from_rows(
        cls,
        a: Sequence[Sequence[float]],
        b: Sequence[float],
        c: Sequence[float] | None = None,
        name: str = "unnamed",
    ) -> "ButcherTableau":
        """Build a tableau from stage rows 1..s-1 and weights, computing c when omitted.

        Args:
            a: Rows 1..s-1 of the Runge-Kutta matrix (row i has i entries)
            b: The s weights
            c: Optional nodes; defaults to the row sums of ``a`` with c_0 = 0
            name: Display name

        Example:
            >>> ButcherTableau.from_rows([[1.0]], [0.5, 0.5], name="rk2")
        """
        s = len(b)
        rows = [()] + [tuple(row) for row in a] + [tuple(b)]
        if c is None:
            c = [0.0] + [float(sum(row)) for row in a]
        return cls(s=s, a=to_ragged(rows), c=tuple(float(x) for x in c), name=name)

    @property
    def b(self) -> tuple[float, ...]:
        return self.a[self.s]

    def lower_matrix(self) -> np.ndarray:
        """The (s+1) x (s+1) strictly lower-triangular matrix A_L including the b-row."""
        m = np.zeros((self.s + 1, self.s + 1))
        for i, row in enumerate(self.a):
            m[i, :i] = row
        return m


class ShuOsherForm(BaseModel):
    """Stages v_i = sum_k (alpha_ik v_k + tau beta_ik G(v_k)) for 1 <= i <= s."""

    model_config = ConfigDict(frozen=True)

    s: int = Field(gt=0)
    alpha: Ragged
    beta: Ragged
    name: str = "unnamed"

    @model_validator(mode="after")
    def _shape(self) -> "ShuOsherForm":
        _check_ragged(self.alpha, self.s, "alpha")
        _check_ragged(self.beta, self.s, "beta")
        return self

    def row_sum_residuals(self) -> list[float]:
        return [abs(sum(self.alpha[i]) - 1.0) for i in range(1, self.s + 1)]


class CanonicalForm(BaseModel):
    """Stages v_i = sum_k p_ik v_k + d_i tau G(v_{i-1}), one derivative evaluation each.

    ``d`` is stored 0-based: ``d[i - 1]`` is the multiplier of stage ``i``.
    Entries of ``p`` may be negative.
    """

    model_config = ConfigDict(frozen=True)

    s: int = Field(gt=0)
    p: Ragged
    d: tuple[float, ...]
    name: str = "unnamed"

    @model_validator(mode="after")
    def _shape(self) -> "CanonicalForm":
        _check_ragged(self.p, self.s, "p")
        if len(self.d) != self.s:
            raise ValueError(f"d must have {self.s} entries, got {len(self.d)}")
        return self


WitnessKind = Literal[
    "non_positive_entry",
    "negative_alpha",
    "negative_beta",
    "beta_without_alpha",
]


class Witness(BaseModel):
    """Offending coefficient of a failed SSP test (0-based row/col, b-row is row s)."""

    model_config = ConfigDict(frozen=True)

    row: int
    col: int
    value: float
    kind: WitnessKind = "non_positive_entry"


class SspVerdict(BaseModel):
    """Result of an SSP test: a witness on failure, a positive Shu-Osher form on success."""

    model_config = ConfigDict(frozen=True)

    is_ssp: bool
    witness: Witness | None = None
    constructed_form: ShuOsherForm | None = None

    @model_validator(mode="after")
    def _consistent(self) -> "SspVerdict":
        if self.is_ssp and self.witness is not None:
            raise ValueError("a passing verdict carries no witness")
        if self.is_ssp and self.constructed_form is None:
            raise ValueError("a passing verdict needs a constructed form")
        if not self.is_ssp and self.witness is None:
            raise ValueError("a failing verdict needs a witness")
        if not self.is_ssp and self.constructed_form is not None:
            raise ValueError("a failing verdict carries no constructed form")
        return self


class Scheme(BaseModel):
    """A named scheme: its Butcher tableau and, when it is defined that way, its native Shu-Osher form."""

    model_config = ConfigDict(frozen=True)

    name: str
    tableau: ButcherTableau
    shu_osher: ShuOsherForm | None = None
    order: int = Field(ge=1, description="Nominal order of accuracy")


class Violation(BaseModel):
    """One failed consistency condition of a Butcher tableau."""

    model_config = ConfigDict(frozen=True)

    row: int
    residual: float
    message: str
