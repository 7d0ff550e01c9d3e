"""Evaluation, arithmetic, integration and differentiation of BallScalars."""

import logging
from typing import Tuple, Union

import numpy as np
from numpy.polynomial import chebyshev as cheb
from numpy.polynomial import polynomial as poly
from scipy.linalg import solve_banded

from . import config
from .construct import adaptive, simplify
from .errors import DomainError
from .grid import mode_numbers
from .tensor import BallScalar, CffTensor, Number, common_shape
from .transforms import coeffs2vals, vals2coeffs

logger = logging.getLogger(__name__)

# Points farther than this beyond the unit sphere are rejected
DOMAIN_SLACK = 1e-12

# Divisors at or below this fraction of their vscale count as zero
ZERO_DIVISOR_TOL = 1e-14

AXES = ("x", "y", "z")


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def cartesian_to_spherical(x, y, z) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Map Cartesian points to (r, lam, th); th = 0 at the origin.

    Raises:
        DomainError: if any point lies outside the closed unit ball
    """
    x, y, z = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float), np.asarray(z, float))
    r = np.sqrt(x**2 + y**2 + z**2)
    if np.any(r > 1.0 + DOMAIN_SLACK):
        raise DomainError(f"Point outside the unit ball (|q| = {np.max(r):.17g})")
    lam = np.arctan2(y, x)
    with np.errstate(invalid="ignore", divide="ignore"):
        th = np.where(r > 0, np.arccos(np.clip(z / np.where(r > 0, r, 1.0), -1.0, 1.0)), 0.0)
    return r, lam, th


def _check_radius(r) -> None:
    if np.any(np.abs(r) > 1.0 + DOMAIN_SLACK):
        raise DomainError(f"Radius outside [-1, 1]: {np.max(np.abs(r)):.17g}")


def _finish(f: BallScalar, values):
    """Drop the imaginary part of real functions, warning on large residue."""
    if not f.real:
        return values
    residue = float(np.max(np.abs(np.imag(values)), initial=0.0))
    scale = f.vscale if f.vscale > 0 else 1.0
    if residue > config.get_imag_warning_tol() * scale:
        logger.warning(f"Real function evaluated with imaginary residue {residue:.3e}")
    return np.real(values)


def _horner_centered(c: np.ndarray, z: complex):
    """Sum c[j + n/2] z^j over j = -n/2..n/2-1 along the first axis.

    Nonnegative and negative powers run as separate Horner sums in z and
    conj(z), so the j = 0 term is never rescaled.
    """
    half = c.shape[0] // 2
    w = np.conj(z)
    return poly.polyval(z, c[half:]) + w * poly.polyval(w, c[half - 1::-1])


def eval_point(f: BallScalar, a: float, b: float, c: float, coords: str = "cart"):
    """Evaluate f at one point by Clenshaw in r and Horner in lam and th."""
    if coords == "cart":
        r, lam, th = (float(v) for v in cartesian_to_spherical(a, b, c))
    else:
        r, lam, th = float(a), float(b), float(c)
        _check_radius(r)
    data = f.coeffs.data
    angular = cheb.chebval(r, data)
    by_theta = _horner_centered(angular, np.exp(1j * lam))
    value = _horner_centered(by_theta, np.exp(1j * th))
    return _finish(f, complex(value))


def evaluate_spherical(f: BallScalar, r, lam, th) -> np.ndarray:
    """Vectorized evaluation at arrays of points (r, lam, th), in blocks."""
    r, lam, th = np.broadcast_arrays(np.asarray(r, float), np.asarray(lam, float), np.asarray(th, float))
    _check_radius(r)
    shape = r.shape
    r, lam, th = r.ravel(), lam.ravel(), th.ravel()
    m, n, p = f.sizes
    flat = f.coeffs.data.reshape(m, n * p)
    j, k = mode_numbers(n), mode_numbers(p)
    out = np.empty(r.size, dtype=complex)
    chunk = config.get_eval_chunk()
    for start in range(0, r.size, chunk):
        stop = min(start + chunk, r.size)
        radial = cheb.chebvander(r[start:stop], m - 1) @ flat
        radial = radial.reshape(-1, n, p)
        e_lam = np.exp(1j * np.outer(lam[start:stop], j))
        e_th = np.exp(1j * np.outer(th[start:stop], k))
        out[start:stop] = np.einsum("qjk,qj,qk->q", radial, e_lam, e_th)
    return out.reshape(shape)


def evaluate(f: BallScalar, a, b, c, coords: str = "cart"):
    """Evaluate f at points given in Cartesian or spherical coordinates."""
    if coords == "cart":
        r, lam, th = cartesian_to_spherical(a, b, c)
    elif coords == "sph":
        r, lam, th = a, b, c
    else:
        raise ValueError(f"Unknown coordinate system: {coords}")
    values = evaluate_spherical(f, r, lam, th)
    if values.ndim == 0:
        values = complex(values)
    return _finish(f, values)


def grid_values(f: BallScalar) -> np.ndarray:
    """Values of f on its doubled grid."""
    return coeffs2vals(f.coeffs)


# ---------------------------------------------------------------------------
# Arithmetic
# ---------------------------------------------------------------------------

def _as_scalar(value: Union[BallScalar, Number]) -> BallScalar:
    if isinstance(value, BallScalar):
        return value
    value = complex(value)
    return BallScalar(CffTensor.constant(value), True, abs(value), value.imag == 0)


def add(f: BallScalar, g: Union[BallScalar, Number]) -> BallScalar:
    """Sum of two functions, padding both to common sizes."""
    g = _as_scalar(g)
    shape = common_shape(f.sizes, g.sizes)
    data = f.coeffs.resized(*shape).data + g.coeffs.resized(*shape).data
    return simplify(CffTensor(data), f.real and g.real, f.resolved and g.resolved)


def mul(f: BallScalar, g: Union[BallScalar, Number]) -> BallScalar:
    """Product of two functions.

    Both are sampled on a grid large enough to hold the product exactly,
    multiplied pointwise and transformed back.
    """
    if not isinstance(g, BallScalar):
        value = complex(g)
        if value == 0:
            return BallScalar(CffTensor.zeros(), f.resolved, 0.0, True)
        real = f.real and value.imag == 0
        return BallScalar(CffTensor(f.coeffs.data * value), f.resolved, f.vscale * abs(value), real, f.report)
    shape = (f.m + g.m - 1, f.n + g.n, f.p + g.p)
    values = coeffs2vals(f.coeffs.resized(*shape)) * coeffs2vals(g.coeffs.resized(*shape))
    return simplify(vals2coeffs(values), f.real and g.real, f.resolved and g.resolved)


def divide(f: BallScalar, g: BallScalar) -> BallScalar:
    """Quotient f / g, resampled adaptively from pointwise division.

    Raises:
        DomainError: if g vanishes at a sample point
    """
    floor = ZERO_DIVISOR_TOL * g.vscale

    def sample(grid) -> np.ndarray:
        r, lam, th = grid.mesh()
        denominator = evaluate_spherical(g, r, lam, th)
        if np.min(np.abs(denominator), initial=np.inf) <= floor:
            raise DomainError("Division by a function that vanishes in the ball")
        return evaluate_spherical(f, r, lam, th) / denominator

    q = adaptive(sample, initial=common_shape(f.sizes, g.sizes), real=f.real and g.real)
    return BallScalar(q.coeffs, f.resolved and g.resolved, q.vscale, q.real, q.report)


def conj(f: BallScalar) -> BallScalar:
    """Complex conjugate, computed on the grid."""
    return simplify(vals2coeffs(np.conj(grid_values(f))), f.real, f.resolved)


def real_part(f: BallScalar) -> BallScalar:
    return simplify(vals2coeffs(np.real(grid_values(f)).astype(complex)), True, f.resolved)


def imag_part(f: BallScalar) -> BallScalar:
    return simplify(vals2coeffs(np.imag(grid_values(f)).astype(complex)), True, f.resolved)


def max_abs(f: BallScalar) -> float:
    """Largest absolute value on the doubled grid."""
    return float(np.max(np.abs(grid_values(f))))


# ---------------------------------------------------------------------------
# Integration
# ---------------------------------------------------------------------------

def radial_weights(m: int) -> np.ndarray:
    """Integrals of r^2 T_i(r) over [0, 1] for even i; zero for odd i."""
    i = np.arange(m, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        nu = (3.0 - i**2) / ((i**2 - 1.0) * (i**2 - 9.0))
    nu[1::2] = 0.0
    return nu


def polar_weights(p: int) -> np.ndarray:
    """Integrals of sin(th) exp(1j*k*th) over [0, pi] for k = -p/2..p/2-1."""
    k = mode_numbers(p)
    w = np.zeros(p, dtype=complex)
    regular = np.abs(k) != 1
    even = (k % 2 == 0) & regular
    w[even] = 2.0 / (1.0 - k[even].astype(float) ** 2)
    w[k == 1] = 0.5j * np.pi
    w[k == -1] = -0.5j * np.pi
    return w


def sum3(f: BallScalar):
    """Integral of f over the unit ball."""
    m, n, p = f.sizes
    slab = f.coeffs.data[:, n // 2, :]
    value = 2.0 * np.pi * (radial_weights(m) @ slab @ polar_weights(p))
    return value.real if f.real else complex(value)


def norm(f: BallScalar) -> float:
    """L2 norm over the unit ball."""
    density = mul(f, conj(f))
    return float(np.sqrt(max(np.real(sum3(density)), 0.0)))


# ---------------------------------------------------------------------------
# Coefficient-space operators
# ---------------------------------------------------------------------------

def _along(data: np.ndarray, axis: int, func) -> np.ndarray:
    return np.moveaxis(func(np.moveaxis(data, axis, 0)), 0, axis)


def _pad_fourier(a: np.ndarray) -> np.ndarray:
    """Add one zero mode at each end of axis 0."""
    out = np.zeros((a.shape[0] + 2,) + a.shape[1:], dtype=complex)
    out[1:-1] = a
    return out


def mul_cos(data: np.ndarray, axis: int) -> np.ndarray:
    """Multiply by cos of the angle on a Fourier axis; the axis grows by 2."""
    def apply(a):
        a = _pad_fourier(a)
        out = np.zeros_like(a)
        out[1:] += 0.5 * a[:-1]
        out[:-1] += 0.5 * a[1:]
        return out
    return _along(data, axis, apply)


def mul_sin(data: np.ndarray, axis: int) -> np.ndarray:
    """Multiply by sin of the angle on a Fourier axis; the axis grows by 2."""
    def apply(a):
        a = _pad_fourier(a)
        out = np.zeros_like(a)
        out[1:] += a[:-1] / 2j
        out[:-1] -= a[1:] / 2j
        return out
    return _along(data, axis, apply)


def mul_r(data: np.ndarray) -> np.ndarray:
    """Multiply by r in the Chebyshev basis; the radial axis grows by 1."""
    out = np.zeros((data.shape[0] + 1,) + data.shape[1:], dtype=complex)
    out[1:] += 0.5 * data
    out[1] += 0.5 * data[0]
    out[:-2] += 0.5 * data[1:]
    return out


def diff_angle(data: np.ndarray, axis: int) -> np.ndarray:
    """Derivative in lam (axis 1) or th (axis 2)."""
    k = mode_numbers(data.shape[axis])
    shape = [1, 1, 1]
    shape[axis] = k.size
    return data * (1j * k).reshape(shape)


def diff_r(data: np.ndarray) -> np.ndarray:
    """Radial derivative, keeping the radial length."""
    out = np.zeros_like(data, dtype=complex)
    if data.shape[0] > 1:
        out[:-1] = cheb.chebder(data, axis=0)
    return out


def div_sin(data: np.ndarray) -> np.ndarray:
    """Divide by sin(th) by solving with the truncated multiplication matrix."""
    p = data.shape[2]
    bands = np.zeros((3, p), dtype=complex)
    bands[0, 1:] = -1.0 / 2j
    bands[2, :-1] = 1.0 / 2j
    rhs = np.moveaxis(data, 2, 0).reshape(p, -1)
    out = solve_banded((1, 1), bands, rhs)
    return np.moveaxis(out.reshape((p,) + data.shape[:2]), 0, 2)


def div_r(data: np.ndarray) -> np.ndarray:
    """Divide by r by solving with the truncated Chebyshev multiplication matrix.

    The matrix is singular for odd sizes, so odd radial lengths are padded
    by one zero coefficient first.
    """
    m = data.shape[0]
    if m % 2:
        data = np.concatenate([data, np.zeros((1,) + data.shape[1:], dtype=complex)])
        m += 1
    bands = np.zeros((3, m))
    bands[0, 1:] = 0.5
    bands[2, :-1] = 0.5
    bands[2, 0] = 1.0
    out = solve_banded((1, 1), bands, data.reshape(m, -1))
    return out.reshape(data.shape)


def _sum_padded(*arrays: np.ndarray) -> np.ndarray:
    shape = common_shape(*(a.shape for a in arrays))
    return sum(CffTensor(a).resized(*shape).data for a in arrays)


# ---------------------------------------------------------------------------
# Differentiation
# ---------------------------------------------------------------------------

def diff_cart_tensor(data: np.ndarray, axis: str) -> np.ndarray:
    """Cartesian partial derivative of a coefficient array.

    Uses the chain rule in spherical coordinates:
        d/dx = cos(lam) sin(th) d/dr + (cos(lam) cos(th) d/dth - sin(lam)/sin(th) d/dlam) / r
        d/dy = sin(lam) sin(th) d/dr + (sin(lam) cos(th) d/dth + cos(lam)/sin(th) d/dlam) / r
        d/dz = cos(th) d/dr - sin(th)/r d/dth
    """
    f_r = diff_r(data)
    f_th = diff_angle(data, 2)
    if axis == "z":
        radial = mul_cos(f_r, 2)
        angular = div_r(mul_sin(f_th, 2))
        return _sum_padded(radial, -angular)

    f_lam = div_sin(diff_angle(data, 1))
    if axis == "x":
        lam_factor, cross_factor, sign = mul_cos, mul_sin, -1.0
    elif axis == "y":
        lam_factor, cross_factor, sign = mul_sin, mul_cos, 1.0
    else:
        raise ValueError(f"Unknown axis: {axis}")
    radial = lam_factor(mul_sin(f_r, 2), 1)
    polar = lam_factor(mul_cos(f_th, 2), 1)
    azimuthal = sign * cross_factor(f_lam, 1)
    angular = div_r(_sum_padded(polar, azimuthal))
    return _sum_padded(radial, angular)


def diff_cart(f: BallScalar, axis: str) -> BallScalar:
    """Partial derivative of f with respect to x, y or z."""
    if axis not in AXES:
        raise ValueError(f"Unknown axis: {axis}")
    data = diff_cart_tensor(f.coeffs.data, axis)
    return simplify(CffTensor(data), f.real, f.resolved)


def laplacian(f: BallScalar) -> BallScalar:
    """Sum of the second Cartesian derivatives."""
    terms = [diff_cart_tensor(diff_cart(f, axis).coeffs.data, axis) for axis in AXES]
    return simplify(CffTensor(_sum_padded(*terms)), f.real, f.resolved)
