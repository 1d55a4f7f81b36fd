"""Configuration management for scheme certification and Allen-Cahn runs."""

from typing import Literal

from pydantic_settings import BaseSettings, SettingsConfigDict


class Config(BaseSettings):
    """Numerical tolerances and diagnostics settings, overridable from MBPRK_* variables."""

    model_config = SettingsConfigDict(env_prefix="MBPRK_", case_sensitive=False, extra="ignore")

    # Tableau algebra
    positivity_floor: float = 1e-14
    tableau_tol: float = 1e-12
    order_tol: float = 1e-10

    # Certificate
    dissipation_tol: float = 1e-12
    jacobi_tol: float = 1e-12
    jacobi_max_sweeps: int = 64
    jacobi_max_dim: int = 16

    # Spatial discretization
    inverse_inequality_constant: float = 4.0

    # Monitors
    mbp_slack: float = 1e-14
    energy_slack: float = 1e-12
    safety_factor: float = 0.9

    # Application Configuration
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "INFO"


# Global config instance
config = Config()
