"""Configuration for Ballkit."""

import os
from typing import Tuple

from dotenv import load_dotenv

load_dotenv()


def get_chop_tolerance() -> float:
    """Get the relative chop tolerance from the environment or settings."""
    value = os.getenv("BALLKIT_TOL")
    if value:
        try:
            tol = float(value)
            if tol > 0:
                return tol
        except ValueError:
            pass
    from .settings import get_settings
    return get_settings().chop_tolerance


def get_initial_sizes() -> Tuple[int, int, int]:
    """Get the starting (m, n, p) of the adaptive constructor."""
    from .settings import get_settings
    settings = get_settings()
    angular = settings.initial_angular + settings.initial_angular % 2
    return settings.initial_radial, angular, angular


def get_size_caps() -> Tuple[int, int]:
    """Get the (radial, angular) size caps of the adaptive constructor."""
    from .settings import get_settings
    settings = get_settings()
    return settings.max_radial, settings.max_angular


def get_sylvester_method() -> str:
    """Get the per-mode Sylvester solver name."""
    from .settings import get_settings
    return get_settings().sylvester_method


def get_eval_chunk() -> int:
    """Get the block size for vectorized evaluation."""
    from .settings import get_settings
    return get_settings().eval_chunk


def get_imag_warning_tol() -> float:
    """Get the imaginary-residue warning threshold."""
    from .settings import get_settings
    return get_settings().imag_warning_tol


def get_log_level() -> str:
    """Get the log level from the environment or settings."""
    value = os.getenv("BALLKIT_LOG_LEVEL")
    if value:
        return value.upper()
    from .settings import get_settings
    return get_settings().log_level.upper()
