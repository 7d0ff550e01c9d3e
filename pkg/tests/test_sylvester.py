import numpy as np
import pytest

from ballkit.helmholtz import BoundaryKind, assemble_mode
from ballkit.sylvester import solve_mode_sylvester, sylvester_residual


def mode_problem(rng, j=3, m=16, p=16, kind=BoundaryKind.DIRICHLET, k2=0.0):
    ops = assemble_mode(j, k2, m, p, kind)
    decay = 2.0 ** -np.arange(m)[:, None] * 2.0 ** -np.abs(np.arange(-p // 2, p // 2))[None, :]
    F = (rng.normal(size=(m, p)) + 1j * rng.normal(size=(m, p))) * decay
    values = rng.normal(size=(2, p)) * 2.0 ** -np.abs(np.arange(-p // 2, p // 2))[None, :]
    return ops, F, values


def solve(ops, F, values, method="kronecker"):
    return solve_mode_sylvester(
        ops.l_r, ops.m_sin2, ops.s02, ops.l_theta, F, ops.rows, values, mode=ops.j, method=method
    )


def test_zero_data_gives_zero_solution():
    ops = assemble_mode(2, 0.0, 10, 8)
    U = solve(ops, np.zeros((10, 8)), np.zeros((2, 8)))
    assert np.all(U == 0)


@pytest.mark.parametrize("kind", [BoundaryKind.DIRICHLET, BoundaryKind.NEUMANN])
def test_residual_and_boundary_rows(rng, kind):
    ops, F, values = mode_problem(rng, kind=kind)
    U = solve(ops, F, values)
    residual = sylvester_residual(ops.l_r, ops.m_sin2, ops.s02, ops.l_theta, F, U)
    scale = np.abs(F).max() + np.abs(U).max()
    assert np.max(np.abs(residual)) <= 1e-11 * scale
    assert np.max(np.abs(ops.rows @ U - values)) <= 1e-12 * scale


def test_bartels_stewart_agrees_with_kronecker(rng):
    ops, F, values = mode_problem(rng, j=1, k2=-4.0)
    U_kron = solve(ops, F, values, method="kronecker")
    U_bs = solve(ops, F, values, method="bartels-stewart")
    assert np.max(np.abs(U_kron - U_bs)) <= 1e-11 * np.abs(U_kron).max()


def test_unknown_method(rng):
    ops, F, values = mode_problem(rng)
    with pytest.raises(ValueError):
        solve(ops, F, values, method="lu")
