"""Pydantic schemas for Allen-Cahn runs, their traces and convergence studies."""

import math
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.models.certificate import BoundMode
from src.models.scheme import ButcherTableau, Scheme

AutoTau = Literal["auto-mbp", "auto-energy"]


class SimulationConfig(BaseModel):
    """Settings of one run on the periodic grid of [0, 2 pi]."""

    model_config = ConfigDict(frozen=True)

    scheme: str | ButcherTableau | Scheme = Field(description="Preset name, tableau file path or scheme")
    epsilon: float = Field(gt=0, description="Interface width")
    n: int = Field(ge=4, description="Number of grid points")
    t_final: float = Field(ge=0)
    tau: float | AutoTau = Field(default="auto-mbp", description="Step size or automatic bound")
    ic: str = Field(default="random:42", description="random:<seed>, cosine:<k> or file:<path>")
    bound_mode: BoundMode = "safe"

    @field_validator("tau")
    @classmethod
    def _positive_tau(cls, v: float | str) -> float | str:
        if isinstance(v, float) and not (v > 0.0 and math.isfinite(v)):
            raise ValueError(f"tau must be positive and finite, got {v!r}")
        return v


class TraceRow(BaseModel):
    """Monitors after one accepted step; row 0 describes the initial state."""

    model_config = ConfigDict(frozen=True)

    step: int = Field(ge=0)
    time: float
    max_norm: float
    energy: float
    energy_delta: float = 0.0
    stage_max_norm: float | None = Field(
        default=None, description="Largest max norm over the intermediate stages of the step"
    )


class SimulationTrace(BaseModel):
    """Rows of a run plus the metadata written as comment lines in the CSV."""

    model_config = ConfigDict(frozen=True)

    rows: tuple[TraceRow, ...]
    metadata: dict[str, str] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _ordered(self) -> "SimulationTrace":
        for prev, row in zip(self.rows, self.rows[1:]):
            if row.time <= prev.time:
                raise ValueError(f"times must increase strictly, step {row.step} goes back to {row.time!r}")
        return self

    @property
    def final_time(self) -> float:
        return self.rows[-1].time if self.rows else 0.0


class TraceVerdict(BaseModel):
    """Monitor summary of a trace against the MBP and energy slacks."""

    model_config = ConfigDict(frozen=True)

    rows: int
    max_norm: float
    max_norm_step: int
    max_energy_delta: float
    max_energy_delta_step: int
    max_stage_norm: float | None = None
    mbp_pass: bool
    energy_pass: bool
    first_mbp_violation: int | None = None
    first_energy_violation: int | None = None

    @property
    def passed(self) -> bool:
        return self.mbp_pass and self.energy_pass


class StudyRow(BaseModel):
    """One step size of a convergence study."""

    model_config = ConfigDict(frozen=True)

    tau: float = Field(gt=0)
    error: float
    observed_order: float | None = Field(
        default=None, description="log(e_prev / e) / log(tau_prev / tau), None on the first row"
    )
