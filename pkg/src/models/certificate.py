"""Pydantic schemas for stability certificates and admissible step sizes."""

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from src.models.scheme import CanonicalForm, Witness

Matrix = tuple[tuple[float, ...], ...]
BoundMode = Literal["safe", "paper"]


class StabilityCertificate(BaseModel):
    """MBP and energy verdicts of a scheme together with the matrices behind them.

    ``phi`` and ``delta_e`` are stored 0-based: entry [i][j] belongs to stages
    i+1 and j+1.
    """

    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    name: str
    mbp: bool = Field(description="RK-SSP condition holds, so the scheme is maximum-bound preserving")
    witness: Witness | None = Field(default=None, description="Offending entry when mbp is false")
    phi: Matrix
    delta_e: Matrix
    lambda_min: float
    ssp_ratio: float = Field(description="Best min alpha/beta over the valid Shu-Osher forms found")
    energy_dissipative: bool = Field(description="lambda_min above the dissipation tolerance")
    indeterminate: bool = Field(description="|lambda_min| within the dissipation tolerance")
    energy_guaranteed: bool = Field(description="energy_dissipative and mbp")
    canonical: CanonicalForm


class StepBounds(BaseModel):
    """Time-step restrictions for one (epsilon, h) pair.

    ``tau_lambda`` and ``tau_energy`` are None when lambda_min is not positive.
    """

    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    epsilon: float = Field(gt=0)
    h: float = Field(gt=0)
    bound_mode: BoundMode = "safe"
    tau0_safe: float
    tau0_paper: float
    tau_ssp: float
    tau_lambda: float | None = None
    tau_energy: float | None = None

    @property
    def tau0(self) -> float:
        return self.tau0_safe if self.bound_mode == "safe" else self.tau0_paper


class CertificateReport(BaseModel):
    """Document printed by ``certify``: the certificate and, given epsilon and h, its bounds."""

    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    scheme: str
    certificate: StabilityCertificate
    bounds: StepBounds | None = None
