"""Settings storage and management."""

import logging
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field, ValidationError

logger = logging.getLogger(__name__)

# Settings file path
SETTINGS_FILE = Path(__file__).parent.parent / "data" / "settings.json"

# Default discretization sizes for the adaptive constructor
DEFAULT_INITIAL_RADIAL = 17
DEFAULT_INITIAL_ANGULAR = 16

# Size caps: 2^13 + 1 Chebyshev points, 2^13 Fourier modes
DEFAULT_MAX_RADIAL = 2**13 + 1
DEFAULT_MAX_ANGULAR = 2**13


class Settings(BaseModel):
    """Numerical settings."""
    chop_tolerance: float = Field(1e-15, gt=0.0)  # relative to vscale
    initial_radial: int = Field(DEFAULT_INITIAL_RADIAL, ge=2)
    initial_angular: int = Field(DEFAULT_INITIAL_ANGULAR, ge=2)
    max_radial: int = DEFAULT_MAX_RADIAL
    max_angular: int = DEFAULT_MAX_ANGULAR

    # Per-mode Sylvester solve: sparse Kronecker system or Bartels-Stewart
    sylvester_method: Literal["kronecker", "bartels-stewart"] = "kronecker"

    # Points per block in vectorized evaluation
    eval_chunk: int = Field(256, ge=1)

    # Imaginary residue on real functions above this (times vscale) is logged
    imag_warning_tol: float = 1e-13

    log_level: str = "WARNING"


def get_settings() -> Settings:
    """Read the settings file; defaults when it is missing or unreadable."""
    if not SETTINGS_FILE.exists():
        return Settings()
    try:
        return Settings.model_validate_json(SETTINGS_FILE.read_text())
    except (OSError, ValidationError) as e:
        logger.warning(f"Ignoring unreadable settings file {SETTINGS_FILE}: {e}")
        return Settings()


def save_settings(settings: Settings) -> None:
    SETTINGS_FILE.parent.mkdir(parents=True, exist_ok=True)
    SETTINGS_FILE.write_text(settings.model_dump_json(indent=2))


def update_settings(**changes) -> Settings:
    """Apply changes on top of the stored settings, validate and persist them."""
    updated = Settings(**{**get_settings().model_dump(), **changes})
    save_settings(updated)
    logger.debug(f"Updated settings: {sorted(changes)}")
    return updated
