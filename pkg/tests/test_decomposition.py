import numpy as np
import pytest

from ballkit.calculus import sum3
from ballkit.construct import construct
from ballkit.decomposition import (
    PTScalars,
    helmholtz_hodge,
    pt_decompose,
    pt_to_vector,
    poloidal_field,
    toroidal_field,
)
from ballkit.demos import stirring_field
from ballkit.errors import NotDivergenceFreeError
from ballkit.vector import BallVector, div, dot, grad, position

from .conftest import random_ball_points


def toroidal_scalar():
    return construct(lambda x, y, z: z * (1 - x**2 - y**2 - z**2))


def poloidal_scalar():
    return construct(lambda x, y, z: x * y * (1 - x**2 - y**2 - z**2))


def zero_mode(f):
    return f.coeffs.data[:, f.n // 2, f.p // 2]


def test_zero_field():
    zero = construct(0.0)
    pt = pt_decompose(BallVector(zero, zero, zero))
    assert pt.phi.max_abs() == 0.0
    assert pt.psi.max_abs() == 0.0


def test_constant_toroidal_scalar_gives_zero_field(ball_points):
    pt = PTScalars(construct(0.0), construct(1.0))
    assert np.max(np.abs(pt_to_vector(pt)(*ball_points))) <= 1e-13


def test_recovers_toroidal_scalar(ball_points):
    psi0 = toroidal_scalar()
    pt = pt_decompose(toroidal_field(psi0))
    assert np.max(np.abs(pt.phi(*ball_points))) <= 1e-9
    assert np.max(np.abs(pt.psi(*ball_points) - psi0(*ball_points))) <= 1e-9


def test_recovers_both_scalars(ball_points):
    phi0, psi0 = poloidal_scalar(), toroidal_scalar()
    v = poloidal_field(phi0) + toroidal_field(psi0)
    pt = pt_decompose(v)
    assert np.max(np.abs(pt.phi(*ball_points) - phi0(*ball_points))) <= 1e-9
    assert np.max(np.abs(pt.psi(*ball_points) - psi0(*ball_points))) <= 1e-9
    assert np.max(np.abs(zero_mode(pt.phi))) <= 1e-14
    assert np.max(np.abs(zero_mode(pt.psi))) <= 1e-14
    assert pt.gauge


def test_poloidal_and_toroidal_parts_are_orthogonal():
    v = poloidal_field(poloidal_scalar()) + toroidal_field(toroidal_scalar())
    P, T = pt_to_vector(pt_decompose(v), separate=True)
    assert abs(sum3(dot(P, T))) <= 1e-8 * P.norm() * T.norm()


def test_reconstruction_is_divergence_free(ball_points):
    pt = PTScalars(poloidal_scalar(), construct(lambda x, y, z: np.sin(x + z)))
    v = pt_to_vector(pt)
    assert np.max(np.abs(div(v)(*ball_points))) <= 1e-9 * max(v.vscale, 1.0)


def test_decomposition_is_deterministic():
    v = toroidal_field(toroidal_scalar())
    first, second = pt_decompose(v), pt_decompose(v)
    assert np.array_equal(first.phi.coeffs.data, second.phi.coeffs.data)
    assert np.array_equal(first.psi.coeffs.data, second.psi.coeffs.data)


def test_rejects_fields_with_divergence():
    with pytest.raises(NotDivergenceFreeError):
        pt_decompose(position())


@pytest.mark.slow
def test_stirring_field_reconstruction(rng):
    v = stirring_field()
    pt = pt_decompose(v)
    points = random_ball_points(rng, 50)
    assert np.max(np.abs(pt_to_vector(pt)(*points) - v(*points))) <= 1e-8
    P, T = pt_to_vector(pt, separate=True)
    assert abs(sum3(dot(P, T))) <= 1e-8 * P.norm() * T.norm()


def test_hodge_of_gradient_field(ball_points):
    x2 = construct(lambda x, y, z: x**2)
    result = helmholtz_hodge(grad(x2))
    assert np.max(np.abs(result.psi(*ball_points))) <= 1e-9
    shifted = result.f(*ball_points) - x2(*ball_points)
    assert np.max(np.abs(shifted - shifted[0])) <= 1e-9


def test_hodge_of_toroidal_field(ball_points):
    v = toroidal_field(toroidal_scalar())
    result = helmholtz_hodge(v)
    assert np.max(np.abs(grad(result.f)(*ball_points))) <= 1e-9


@pytest.mark.slow
def test_hodge_decomposition(rng):
    v = BallVector.from_functions(
        lambda x, y, z: np.cos(x * y) * z,
        lambda x, y, z: np.sin(x * z),
        lambda x, y, z: y * z,
    )
    result = helmholtz_hodge(v)
    points = random_ball_points(rng, 50)
    residual = v(*points) - grad(result.f)(*points) - result.psi(*points)
    assert np.max(np.abs(residual)) <= 1e-8
    assert np.max(np.abs(div(result.psi)(*points))) <= 1e-8

    direction = rng.normal(size=(3, 40))
    direction /= np.linalg.norm(direction, axis=0)
    normal = np.sum(result.psi(*direction) * direction.T, axis=1)
    assert np.max(np.abs(normal)) <= 1e-8
    assert abs(sum3(dot(grad(result.f), result.psi))) <= 1e-8 * max(v.norm() ** 2, 1.0)
