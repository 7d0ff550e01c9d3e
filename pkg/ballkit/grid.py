"""Sample grids on the unit ball and the doubling of half-domain samples."""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import InvalidSizeError, ShapeMismatchError

logger = logging.getLogger(__name__)


def check_sizes(m: int, n: int, p: int) -> None:
    """Validate a discretization size (m, n, p).

    Raises:
        InvalidSizeError: if m < 1 or n, p are not even and at least 2
    """
    if m < 1:
        raise InvalidSizeError(f"Radial size must be at least 1, got {m}")
    for name, value in (("n", n), ("p", p)):
        if value < 2 or value % 2:
            raise InvalidSizeError(f"Fourier size {name} must be even and >= 2, got {value}")


def half_length(m: int) -> int:
    """Number of nonnegative Chebyshev points among m doubled radial points."""
    return (m + 1) // 2


def chebyshev_points(m: int) -> np.ndarray:
    """Chebyshev extreme points cos(i*pi/(m-1)), i = 0..m-1, in descending order.

    Written as sin(pi*(m-1-2i)/(2(m-1))) so the nodes are exactly mirrored and
    the middle node of an odd grid is exactly 0.
    """
    if m == 1:
        return np.zeros(1)
    return np.sin(np.pi * (m - 1 - 2 * np.arange(m)) / (2 * (m - 1)))


def fourier_points(n: int) -> np.ndarray:
    """Equispaced angles 2*j*pi/n for j = -n/2..n/2-1."""
    return 2.0 * np.pi * np.arange(-n // 2, n // 2) / n


def mode_numbers(n: int) -> np.ndarray:
    """Fourier wave numbers stored in slots 0..n-1."""
    return np.arange(-n // 2, n // 2)


@dataclass(frozen=True)
class SampleGrid:
    """Half-domain tensor-product grid for an (m, n, p) discretization."""
    m: int
    n: int
    p: int
    radii: np.ndarray
    lambdas: np.ndarray
    thetas: np.ndarray

    @property
    def shape(self) -> Tuple[int, int, int]:
        return (len(self.radii), len(self.lambdas), len(self.thetas))

    def mesh(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Spherical coordinates (r, lam, th) broadcast over the half grid."""
        return np.meshgrid(self.radii, self.lambdas, self.thetas, indexing="ij")

    def cartesian(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Cartesian coordinates (x, y, z) broadcast over the half grid."""
        r, lam, th = self.mesh()
        return spherical_to_cartesian(r, lam, th)


def make_grid(m: int, n: int, p: int) -> SampleGrid:
    """Build the half-domain sample grid.

    Args:
        m: Number of doubled Chebyshev points in r
        n: Number of Fourier points in lambda (even)
        p: Number of Fourier points in theta (even)

    Returns:
        SampleGrid with ascending nonnegative radii, the full lambda grid
        and thetas 2*k*pi/p for k = 0..p/2
    """
    check_sizes(m, n, p)
    mh = half_length(m)
    radii = chebyshev_points(m)[:mh][::-1].copy()
    thetas = 2.0 * np.pi * np.arange(p // 2 + 1) / p
    return SampleGrid(m=m, n=n, p=p, radii=radii, lambdas=fourier_points(n), thetas=thetas)


def spherical_to_cartesian(r, lam, th):
    """Map (r, lam, th) to (x, y, z) = r (cos lam sin th, sin lam sin th, cos th)."""
    sin_th = np.sin(th)
    return r * np.cos(lam) * sin_th, r * np.sin(lam) * sin_th, r * np.cos(th)


def doubling_indices(m: int, n: int, p: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Index arrays mapping every full-grid node to its half-grid source.

    The returned arrays broadcast to shape (m, n, p) and index a half-grid
    sample array of shape (mh, n, p/2 + 1).
    """
    mh = half_length(m)
    i = np.arange(m)
    neg_r = i >= mh
    ri = np.where(neg_r, mh - m + i, mh - 1 - i)

    k = mode_numbers(p)
    neg_t = k < 0
    r_col = neg_r[:, None]
    t_row = neg_t[None, :]
    ti = np.where(
        r_col,
        np.where(t_row, p // 2 + k, p // 2 - k),
        np.where(t_row, -k, k),
    )
    shift = (r_col ^ t_row).astype(int) * (n // 2)

    a = np.arange(n)
    li = (a[None, :, None] + shift[:, None, :]) % n
    return ri[:, None, None], li, ti[:, None, :]


def double_samples(half: np.ndarray, m: int, n: int, p: int) -> np.ndarray:
    """Extend half-grid samples to the doubled domain [-1,1] x [-pi,pi) x [-pi,pi).

    Every entry of the result is a copy of a half-grid sample; no values
    are computed.
    """
    expected = (half_length(m), n, p // 2 + 1)
    if half.shape != expected:
        raise ShapeMismatchError(f"Half-grid samples have shape {half.shape}, expected {expected}")
    ri, li, ti = doubling_indices(m, n, p)
    return half[ri, li, ti]


def extract_half(full: np.ndarray) -> np.ndarray:
    """Read the half-grid samples back out of doubled-grid values."""
    m, n, p = full.shape
    mh = half_length(m)
    rows = full[mh - 1::-1]
    half = np.empty((mh, n, p // 2 + 1), dtype=full.dtype)
    half[:, :, : p // 2] = rows[:, :, p // 2:]
    # theta = pi sits at theta = -pi after a half turn in lambda
    half[:, :, p // 2] = np.roll(rows[:, :, 0], -(n // 2), axis=1)
    return half
