"""Fast transforms between doubled-grid values and CFF coefficients.

Radial: values at the Chebyshev extreme points cos(i*pi/(m-1)) are mapped to
Chebyshev coefficients with a type-I discrete cosine transform. Angular:
values at 2*j*pi/n are mapped to Fourier coefficients with an FFT. The
normalizations are chosen so that the coefficients reproduce the values
exactly at the grid nodes.
"""

import logging

import numpy as np
from scipy import fft

from .errors import ShapeMismatchError
from .grid import check_sizes, mode_numbers
from .tensor import CffTensor

logger = logging.getLogger(__name__)


def _dct1(values: np.ndarray, axis: int) -> np.ndarray:
    if np.iscomplexobj(values):
        return fft.dct(values.real, type=1, axis=axis) + 1j * fft.dct(values.imag, type=1, axis=axis)
    return fft.dct(values, type=1, axis=axis)


def _endpoints(a: np.ndarray, axis: int, factor: float) -> np.ndarray:
    a = np.moveaxis(a, axis, 0)
    a[0] *= factor
    a[-1] *= factor
    return np.moveaxis(a, 0, axis)


def cheb_vals2coeffs(values: np.ndarray, axis: int = 0) -> np.ndarray:
    """Chebyshev coefficients from values at descending Chebyshev extreme points."""
    m = values.shape[axis]
    if m == 1:
        return np.array(values, dtype=complex)
    coeffs = _dct1(values, axis) / (m - 1)
    return _endpoints(coeffs.astype(complex), axis, 0.5)


def cheb_coeffs2vals(coeffs: np.ndarray, axis: int = 0) -> np.ndarray:
    """Values at descending Chebyshev extreme points from Chebyshev coefficients."""
    m = coeffs.shape[axis]
    if m == 1:
        return np.array(coeffs, dtype=complex)
    scaled = _endpoints(np.array(coeffs, dtype=complex), axis, 2.0)
    return _dct1(scaled, axis) / 2.0


def _alternating(n: int, axis: int, ndim: int) -> np.ndarray:
    signs = 1 - 2 * (mode_numbers(n) % 2)
    shape = [1] * ndim
    shape[axis] = n
    return signs.reshape(shape)


def fourier_vals2coeffs(values: np.ndarray, axis: int) -> np.ndarray:
    """Fourier coefficients (slot j + n/2) from values at 2*j*pi/n, j = -n/2..n/2-1."""
    n = values.shape[axis]
    coeffs = fft.fftshift(fft.fft(values, axis=axis, norm="forward"), axes=axis)
    return coeffs * _alternating(n, axis, values.ndim)


def fourier_coeffs2vals(coeffs: np.ndarray, axis: int) -> np.ndarray:
    """Values at 2*j*pi/n from Fourier coefficients stored at slot j + n/2."""
    n = coeffs.shape[axis]
    shifted = fft.ifftshift(coeffs * _alternating(n, axis, coeffs.ndim), axes=axis)
    return fft.ifft(shifted, axis=axis, norm="forward")


def vals2coeffs(values: np.ndarray) -> CffTensor:
    """Transform values on the doubled grid into a CFF coefficient tensor."""
    values = np.asarray(values)
    if values.ndim != 3:
        raise ShapeMismatchError(f"Expected a 3-D value array, got shape {values.shape}")
    check_sizes(*values.shape)
    coeffs = cheb_vals2coeffs(values, axis=0)
    coeffs = fourier_vals2coeffs(coeffs, axis=1)
    coeffs = fourier_vals2coeffs(coeffs, axis=2)
    return CffTensor(coeffs)


def coeffs2vals(tensor: CffTensor) -> np.ndarray:
    """Evaluate a CFF coefficient tensor on its doubled grid."""
    values = fourier_coeffs2vals(tensor.data, axis=2)
    values = fourier_coeffs2vals(values, axis=1)
    return cheb_coeffs2vals(values, axis=0)


def trace_vals2coeffs(values: np.ndarray) -> np.ndarray:
    """Fourier-Fourier coefficients of an (n, p) array of sphere samples."""
    return fourier_vals2coeffs(fourier_vals2coeffs(values, axis=0), axis=1)


def trace_coeffs2vals(coeffs: np.ndarray) -> np.ndarray:
    """Sphere samples from (n, p) Fourier-Fourier coefficients."""
    return fourier_coeffs2vals(fourier_coeffs2vals(coeffs, axis=1), axis=0)
