import numpy as np
import pytest

from ballkit.construct import construct
from ballkit.decomposition import pt_to_vector
from ballkit.demos import (
    ADVDIFF_DIFFUSIVITY,
    TIME_STEP,
    advection_diffusion,
    imex_shift,
    induction,
    solve_sizes,
    stirring_field,
)
from ballkit.helmholtz import BoundaryKind, helmholtz_solve
from ballkit.vector import BallVector, div, dot, position

from .conftest import random_ball_points


def zero_field() -> BallVector:
    return BallVector(construct(0.0), construct(0.0), construct(0.0))


def test_imex_shift():
    assert imex_shift(ADVDIFF_DIFFUSIVITY, TIME_STEP) == pytest.approx(-1e5)
    assert imex_shift(0.5, 0.1) == pytest.approx(-20.0)


def test_zero_steps_returns_initial_condition(rng):
    snapshots = advection_diffusion(0, 12)
    assert len(snapshots) == 1
    x, y, z = random_ball_points(rng, 20)
    expected = -x * np.exp(-5.0 * (x**2 + y**2 + z**2))
    assert np.allclose(snapshots[0](x, y, z), expected, atol=1e-13)


def test_one_step_without_velocity_is_a_helmholtz_solve():
    c0, c1 = advection_diffusion(1, 12, velocity=zero_field(), diffusivity=0.1, dt=0.1)
    k2 = imex_shift(0.1, 0.1)
    expected = helmholtz_solve(c0 * k2, k2, 0.0, sizes=(12, 12, 12), kind=BoundaryKind.NEUMANN)
    assert (c1 - expected).max_abs() <= 1e-11
    assert c1.norm() < c0.norm()


def test_stirring_field_is_tangent_and_solenoidal(rng):
    v = stirring_field()
    assert div(v).max_abs() <= 1e-9 * v.vscale
    lam = rng.uniform(-np.pi, np.pi, 20)
    th = rng.uniform(0.0, np.pi, 20)
    normal = dot(v, position())(np.ones(20), lam, th, coords="sph")
    assert np.max(np.abs(normal)) <= 1e-11


@pytest.mark.slow
def test_advection_diffusion_conserves_mass():
    snapshots = advection_diffusion(10, 30)
    assert len(snapshots) == 11
    # the initial condition is odd in x, so the conserved integral is zero
    for c in snapshots:
        assert abs(c.sum3()) <= 1e-8
        assert np.isfinite(c.max_abs())


@pytest.mark.slow
def test_induction_keeps_field_solenoidal(rng):
    snapshots = induction(2, 40)
    assert len(snapshots) == 3
    initial = pt_to_vector(snapshots[0])
    points = random_ball_points(rng, 30)
    assert np.max(np.abs(initial(*points) - stirring_field()(*points))) <= 1e-8
    for pt in snapshots[1:]:
        b = pt_to_vector(pt)
        assert np.isfinite(b.norm())
        assert div(b).norm() <= 1e-8


def test_solve_sizes_rounds_angular_sizes_up_to_even():
    assert solve_sizes(31) == (31, 32, 32)
    assert solve_sizes((9, 8, 10)) == (9, 8, 10)
    assert solve_sizes((9, 7, 5)) == (9, 8, 6)
