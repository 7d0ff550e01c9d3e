"""Rotation of BallScalars by Euler angles.

A rotation moves only the angular coordinates, so the rotated function is
sampled shell by shell: the radial series is summed once at the grid radii
and the angular Fourier-Fourier series is evaluated at the rotated angles.
"""

import logging
from typing import NamedTuple, Optional

import numpy as np
from numpy.polynomial import chebyshev as cheb

from . import config
from .construct import adaptive
from .errors import DomainError
from .grid import SampleGrid, chebyshev_points, mode_numbers, spherical_to_cartesian
from .tensor import BallScalar

logger = logging.getLogger(__name__)

# Tolerance for matching radii against Chebyshev nodes
RADIUS_MATCH_TOL = 1e-14


class EulerAngles(NamedTuple):
    """Z-X-Z angles: alpha about z, then beta about x, then gamma about z."""
    alpha: float
    beta: float
    gamma: float

    def matrix(self) -> np.ndarray:
        return rotation_matrix(self.alpha, self.beta, self.gamma)


def _rz(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _rx(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def rotation_matrix(alpha: float, beta: float, gamma: float) -> np.ndarray:
    """R = Rz(gamma) @ Rx(beta) @ Rz(alpha)."""
    return _rz(gamma) @ _rx(beta) @ _rz(alpha)


def _radial_slab(f: BallScalar, radii: np.ndarray) -> np.ndarray:
    """Sum the Chebyshev series at the given radii: shape (len(radii), n, p)."""
    m, n, p = f.sizes
    flat = f.coeffs.data.reshape(m, n * p)
    return (cheb.chebvander(radii, m - 1) @ flat).reshape(len(radii), n, p)


def _angular_sum(slab: np.ndarray, lambdas: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """Evaluate per-shell Fourier-Fourier series at angular points, in blocks."""
    shells, n, p = slab.shape
    j, k = mode_numbers(n), mode_numbers(p)
    out = np.empty((shells, lambdas.size), dtype=complex)
    chunk = config.get_eval_chunk()
    for start in range(0, lambdas.size, chunk):
        stop = min(start + chunk, lambdas.size)
        e_lam = np.exp(1j * np.outer(lambdas[start:stop], j))
        e_th = np.exp(1j * np.outer(thetas[start:stop], k))
        partial = np.einsum("sjk,qk->sqj", slab, e_th)
        out[:, start:stop] = np.einsum("sqj,qj->sq", partial, e_lam)
    return out


def nonuniform_eval(
    f: BallScalar,
    radii: np.ndarray,
    lambdas: np.ndarray,
    thetas: np.ndarray,
    grid_size: Optional[int] = None,
) -> np.ndarray:
    """Evaluate f on shells of Chebyshev radii at shared scattered angles.

    Args:
        f: Function to evaluate
        radii: Shell radii; each must be a node of the grid_size-point
               Chebyshev grid
        lambdas, thetas: Angular points, one pair per output column
        grid_size: Radial grid the radii come from, defaults to f's

    Returns:
        Complex array of shape (len(radii), len(lambdas))
    """
    radii = np.atleast_1d(np.asarray(radii, float))
    lambdas = np.ravel(np.asarray(lambdas, float))
    thetas = np.ravel(np.asarray(thetas, float))
    nodes = chebyshev_points(grid_size or f.m)
    gaps = np.min(np.abs(radii[:, None] - nodes[None, :]), axis=1)
    if np.any(gaps > RADIUS_MATCH_TOL):
        raise DomainError(f"Radius {radii[np.argmax(gaps)]:.17g} is not a node of the {nodes.size}-point grid")
    return _angular_sum(_radial_slab(f, radii), lambdas, thetas)


def rotate(f: BallScalar, alpha: float, beta: float, gamma: float) -> BallScalar:
    """Rotate f so that g(q) = f(R^T q) with R = rotation_matrix(alpha, beta, gamma).

    The rotated function is resolved adaptively starting from f's sizes.
    """
    pullback = rotation_matrix(alpha, beta, gamma).T

    def sample(grid: SampleGrid) -> np.ndarray:
        lam, th = np.meshgrid(grid.lambdas, grid.thetas, indexing="ij")
        points = np.stack(spherical_to_cartesian(1.0, lam.ravel(), th.ravel()))
        x, y, z = pullback @ points
        rot_lam = np.arctan2(y, x)
        rot_th = np.arccos(np.clip(z, -1.0, 1.0))
        values = _angular_sum(_radial_slab(f, grid.radii), rot_lam, rot_th)
        return values.reshape(grid.shape)

    logger.debug(f"Rotating {f.sizes} function by ({alpha}, {beta}, {gamma})")
    return adaptive(sample, initial=f.sizes, real=f.real)
