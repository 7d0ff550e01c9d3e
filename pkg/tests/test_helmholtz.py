import numpy as np
import pytest

from ballkit.boundary import boundary_trace, sample_boundary
from ballkit.construct import construct, is_bmc, origin_sums, pole_sums
from ballkit.errors import InvalidSizeError, SolvabilityError
from ballkit.helmholtz import (
    BoundaryData,
    BoundaryKind,
    _scaled_rhs,
    assemble_mode,
    boundary_rows,
    check_compatibility,
    helmholtz_solve,
)

from .conftest import random_ball_points


def manufactured(x, y, z):
    return (1 - x**2 - y**2 - z**2) * z + 0.3 * x * y


def test_boundary_rows():
    assert np.allclose(boundary_rows(BoundaryKind.DIRICHLET, 4), [[1, 1, 1, 1], [1, -1, 1, -1]])
    assert np.allclose(boundary_rows(BoundaryKind.NEUMANN, 4), [[0, 1, 4, 9], [0, 1, -4, 9]])


def test_gminus_is_the_reflected_trace(rng):
    g = sample_boundary(lambda x, y, z: x * y + 2 * z + z**2, 8, 10)
    data = BoundaryData(BoundaryKind.DIRICHLET, g)
    # u(-1, lam, th) is u(1, lam + pi, pi - th)
    lam, th = rng.uniform(-np.pi, np.pi, 6), rng.uniform(-np.pi, np.pi, 6)
    j = np.arange(-4, 4)
    k = np.arange(-5, 5)
    minus = np.einsum("qj,jk,qk->q", np.exp(1j * np.outer(lam, j)), data.gminus, np.exp(1j * np.outer(th, k)))
    assert np.allclose(minus, g(lam + np.pi, np.pi - th))


def test_constants_are_in_the_kernel():
    ops = assemble_mode(0, 0.0, 8, 8)
    U = np.zeros((8, 8))
    U[0, 4] = 1.0
    lhs = ops.l_r @ U @ ops.m_sin2.T.toarray() + ops.s02 @ U @ ops.l_theta.T.toarray()
    assert np.max(np.abs(lhs)) <= 1e-14


def test_r_squared_matches_scaled_rhs():
    m, p = 8, 8
    ops = assemble_mode(0, 0.0, m, p)
    U = np.zeros((m, p))
    U[[0, 2], p // 2] = 0.5
    lhs = ops.l_r @ U @ ops.m_sin2.T.toarray() + ops.s02 @ U @ ops.l_theta.T.toarray()
    F = _scaled_rhs(construct(6.0), m, 8, p)[:, 4, :]
    assert np.allclose(lhs, ops.s02 @ F, atol=1e-14)


def test_dirichlet_constant():
    u = helmholtz_solve(0.0, 0.0, 1.0)
    points = random_ball_points(np.random.default_rng(1), 30)
    assert np.max(np.abs(u(*points) - 1.0)) <= 1e-12


def test_radial_size_must_allow_two_boundary_rows():
    with pytest.raises(InvalidSizeError):
        helmholtz_solve(0.0, 0.0, 1.0, sizes=(3, 4, 4))


@pytest.mark.parametrize("method", ["kronecker", "bartels-stewart"])
def test_dirichlet_manufactured_solution(rng, method):
    k2 = 3.0
    rhs = construct(lambda x, y, z: -10 * z + k2 * manufactured(x, y, z))
    u = helmholtz_solve(rhs, k2, lambda x, y, z: 0.3 * x * y, sizes=(12, 8, 10), method=method)
    points = random_ball_points(rng, 50)
    assert np.max(np.abs(u(*points) - manufactured(*points))) <= 1e-10
    assert is_bmc(u.coeffs)


def test_solution_meets_pole_and_origin_conditions_exactly():
    k2 = 3.0
    rhs = construct(lambda x, y, z: -10 * z + k2 * manufactured(x, y, z))
    u = helmholtz_solve(rhs, k2, lambda x, y, z: 0.3 * x * y, sizes=(12, 8, 10))
    north, south = pole_sums(u.coeffs.data)
    assert max(np.max(np.abs(north)), np.max(np.abs(south))) <= 1e-13
    assert np.max(np.abs(origin_sums(u.coeffs.data))) <= 1e-13


def test_neumann_shifted_manufactured_solution(rng):
    k2 = -7.5
    rhs = construct(lambda x, y, z: -10 * z + k2 * manufactured(x, y, z))
    u = helmholtz_solve(rhs, k2, lambda x, y, z: -2 * z + 0.6 * x * y, sizes=(12, 8, 10), kind="neumann")
    points = random_ball_points(rng, 50)
    assert np.max(np.abs(u(*points) - manufactured(*points))) <= 1e-10


def test_poisson_neumann_legendre_path(rng):
    rhs = construct(lambda x, y, z: -10 * z)
    u = helmholtz_solve(rhs, 0.0, lambda x, y, z: -2 * z + 0.6 * x * y, sizes=(12, 8, 10), kind=BoundaryKind.NEUMANN)
    points = random_ball_points(rng, 50)
    assert np.max(np.abs(u(*points) - manufactured(*points))) <= 1e-9
    assert abs(u.coeffs.coefficient(0, 0, 0)) <= 1e-14


def test_poisson_neumann_gauge_fixes_the_constant(rng):
    u = helmholtz_solve(6.0, 0.0, 2.0, sizes=(8, 4, 6), kind=BoundaryKind.NEUMANN)
    points = random_ball_points(rng, 20)
    x, y, z = points
    shifted = u(*points) - (x**2 + y**2 + z**2)
    assert np.max(np.abs(shifted - shifted[0])) <= 1e-12


def test_incompatible_neumann_data():
    with pytest.raises(SolvabilityError) as info:
        helmholtz_solve(1.0, 0.0, 0.0, sizes=(8, 4, 4), kind=BoundaryKind.NEUMANN)
    assert info.value.residual > 1.0


def test_rounding_level_flux_is_compatible():
    # a tangential field has a normal component at rounding level only
    residual = check_compatibility(construct(0.0), boundary_trace(construct(1e-17)))
    assert residual == pytest.approx(4 * np.pi * 1e-17)


def sin10x_error(n, rng):
    rhs = construct(lambda x, y, z: -80 * np.sin(10 * x))
    u = helmholtz_solve(rhs, 20.0, lambda x, y, z: 10 * x * np.cos(10 * x), sizes=(n, n, n), kind="neumann")
    points = random_ball_points(rng, 200)
    return np.max(np.abs(u(*points) - np.sin(10 * points[0]))), u


def sin10x_interpolant_error(n, rng):
    f = construct(lambda x, y, z: np.sin(10 * x), sizes=(n, n, n))
    points = random_ball_points(rng, 200)
    return np.max(np.abs(f(*points) - np.sin(10 * points[0])))


@pytest.mark.slow
def test_helmholtz_sin_10x_at_50():
    # at n = 50 the interpolant of sin(10x) itself is only good to about 1e-9
    error, u = sin10x_error(50, np.random.default_rng(3))
    floor = sin10x_interpolant_error(50, np.random.default_rng(3))
    assert error <= max(2 * floor, 1e-12)
    assert is_bmc(u.coeffs)


@pytest.mark.slow
def test_helmholtz_sin_10x_at_52():
    error, _ = sin10x_error(52, np.random.default_rng(3))
    assert error <= 1e-9


@pytest.mark.slow
def test_helmholtz_spectral_convergence(rng):
    coarse, _ = sin10x_error(20, rng)
    fine, _ = sin10x_error(50, rng)
    assert fine <= 1e-4 * coarse
