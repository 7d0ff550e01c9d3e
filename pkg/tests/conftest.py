"""Shared fixtures for the Ballkit test suite."""

import numpy as np
import pytest

from ballkit import settings


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    """Keep tests away from the user's settings file and environment overrides."""
    monkeypatch.setattr(settings, "SETTINGS_FILE", tmp_path / "settings.json")
    for name in ("BALLKIT_TOL", "BALLKIT_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def rng():
    return np.random.default_rng(20240531)


def random_ball_points(rng, count: int, radius: float = 0.95):
    """Uniform random points inside the ball of the given radius."""
    direction = rng.normal(size=(3, count))
    direction /= np.linalg.norm(direction, axis=0)
    r = radius * rng.uniform(size=count) ** (1.0 / 3.0)
    return tuple(direction * r)


@pytest.fixture
def ball_points(rng):
    return random_ball_points(rng, 50)


def random_bmc_half(rng, m: int, n: int, p: int):
    """Random half-grid samples that are constant where the doubled domain requires it."""
    from ballkit.grid import half_length

    half = rng.normal(size=(half_length(m), n, p // 2 + 1))
    if m % 2:
        half[0] = half[0, 0, 0]
    half[:, :, 0] = half[:, :1, 0]
    half[:, :, -1] = half[:, :1, -1]
    return half
