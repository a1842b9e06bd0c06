# probarg/core/config.py
from pydantic import BaseModel, ConfigDict, Field
from typing import Optional
import logging

logger = logging.getLogger(__name__)


class SolverSettings(BaseModel):
    """Numeric knobs shared by the services and the CLI"""

    model_config = ConfigDict(frozen=True)

    # Slack for property checks and compliance
    property_tol: float = Field(default=1e-9, ge=0.0)
    # Half-width of the band around 0.5 labelled undec
    label_band: float = Field(default=1e-9, ge=0.0, lt=0.5)
    congruence_tol: float = Field(default=1e-12, ge=0.0)
    completion_tol: float = Field(default=1e-8, gt=0.0)

    power_set_cap: int = Field(default=20, ge=1)
    enumeration_cap: int = Field(default=25, ge=1)
    oracle_cap: int = Field(default=10, ge=1)
    exhaustive_cap: int = Field(default=10, ge=1)

    max_iterations: int = Field(default=100_000, ge=1)
    barrier_mu: float = Field(default=10.0, gt=1.0)
    active_set_tol: float = Field(default=1e-4, gt=0.0)
    # Band used when reading labels off optimizer output
    maxent_label_band: float = Field(default=1e-4, gt=0.0, lt=0.5)


# Don't initialize at module level
_settings: Optional[SolverSettings] = None


def get_settings() -> SolverSettings:
    """Get or create the process-wide settings"""
    global _settings

    if _settings is None:
        _settings = SolverSettings()
        logger.debug("Initialized default solver settings")

    return _settings


def configure(**overrides) -> SolverSettings:
    """Replace the process-wide settings with a validated copy carrying overrides"""
    global _settings

    current = get_settings()
    values = current.model_dump()
    values.update({key: value for key, value in overrides.items() if value is not None})
    _settings = SolverSettings(**values)
    logger.debug(f"Solver settings updated: {sorted(k for k, v in overrides.items() if v is not None)}")
    return _settings


def reset_settings() -> None:
    global _settings
    _settings = None


__all__ = ["SolverSettings", "get_settings", "configure", "reset_settings"]
