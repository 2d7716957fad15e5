"""Application settings using Pydantic Settings."""

from typing import Literal, Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class UnitsSettings(BaseSettings):
    """Physical units (natural units by default)."""

    hbar: float = Field(default=1.0, gt=0)
    m: float = Field(default=1.0, gt=0)
    mu: float = Field(default=1.0, gt=0)


class ToleranceSettings(BaseSettings):
    """Numerical thresholds shared by every witness."""

    witness: float = Field(default=1e-12, ge=1e-12)
    # geometric witness: relative floor and fidelity round-off behind the arccos
    witness_relative: float = 1e-9
    fidelity_roundoff: float = 1e-13
    degenerate: float = 1e-14
    outcome_pruning: float = 1e-14
    qfi_eigenvalue: float = 1e-12
    fidelity_eigenvalue: float = 1e-14
    hermitian: float = 1e-12
    psd: float = 1e-10
    trace: float = 1e-10
    no_signaling: float = 1e-9


class GaussianSettings(BaseSettings):
    """Continuous-variable engine configuration."""

    # Audit switch: reinstates the extra hbar^2/p0^2 factor on sigma_AB(1,1)
    printed_cross_prefactor: bool = False
    gamma_convention: Literal["printed", "physical"] = "printed"
    bisection_tol: float = 1e-10
    bisection_max_iter: int = 500


class OracleSettings(BaseSettings):
    """Brute-force oracle configuration."""

    quadrature_order: int = Field(default=40, ge=20)
    max_quadrature_order: int = 320
    quadrature_rtol: float = 1e-10
    mc_samples: int = Field(default=1_000_000, ge=10_000)
    seed: int = 20240611
    fd_eps: float = 1e-3
    fd_eigenvalue_clamp: float = 1e-10


class GhzSettings(BaseSettings):
    """Dense GHZ simulation limits."""

    max_dense_qubits: int = 12
    max_state_qubits: int = 14


class VerificationSettings(BaseSettings):
    """Sizes of the randomized verification suites."""

    lhs_models: int = 200
    gamma_draws: int = 10_000
    moment_draws: int = 50
    qfi_states: int = 100
    evolution_draws: int = 100
    mc_samples: int = 1_000_000
    mc_sigmas: float = 4.0


class Settings(BaseSettings):
    """Application settings."""

    model_config = SettingsConfigDict(
        env_prefix="SPEED_STEERING_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        env_nested_delimiter="__",
    )

    # Application
    app_name: str = "Speed-limit steering witnesses"
    version: str = "0.1.0"
    debug: bool = False
    log_level: str = "WARNING"
    log_format: Optional[str] = None

    units: UnitsSettings = Field(default_factory=UnitsSettings)
    tolerances: ToleranceSettings = Field(default_factory=ToleranceSettings)
    gaussian: GaussianSettings = Field(default_factory=GaussianSettings)
    oracle: OracleSettings = Field(default_factory=OracleSettings)
    ghz: GhzSettings = Field(default_factory=GhzSettings)
    verification: VerificationSettings = Field(default_factory=VerificationSettings)

    @field_validator("log_level")
    @classmethod
    def _upper_level(cls, value: str) -> str:
        return value.upper()


# Global settings instance
settings = Settings()
