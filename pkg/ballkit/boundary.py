"""Functions on the unit sphere: boundary traces and surface integrals."""

import logging
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .calculus import polar_weights
from .grid import check_sizes, fourier_points, mode_numbers, spherical_to_cartesian
from .tensor import BallScalar, Number, resize_fourier
from .transforms import trace_coeffs2vals, trace_vals2coeffs

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class BoundaryTrace:
    """Fourier-Fourier coefficients g[j + n/2, k + p/2] of a function on the sphere."""
    data: np.ndarray
    real: bool = True

    def __post_init__(self):
        data = np.array(self.data, dtype=complex)
        check_sizes(1, *data.shape)
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def p(self) -> int:
        return self.data.shape[1]

    def resized(self, n: int, p: int) -> "BoundaryTrace":
        data = resize_fourier(resize_fourier(self.data, n, axis=0), p, axis=1)
        return BoundaryTrace(data, self.real)

    def values(self) -> np.ndarray:
        """Samples on the doubled (lam, th) grid."""
        return trace_coeffs2vals(self.data)

    def __call__(self, lam, th):
        lam, th = np.broadcast_arrays(np.asarray(lam, float), np.asarray(th, float))
        e_lam = np.exp(1j * np.multiply.outer(lam, mode_numbers(self.n)))
        e_th = np.exp(1j * np.multiply.outer(th, mode_numbers(self.p)))
        values = np.einsum("...j,jk,...k->...", e_lam, self.data, e_th)
        return values.real if self.real else values


def boundary_trace(f: BallScalar) -> BoundaryTrace:
    """Restriction of f to r = 1 (T_i(1) = 1 for every i)."""
    return BoundaryTrace(f.coeffs.data.sum(axis=0), f.real)


def sample_boundary(
    g: Union[Callable, Number, BoundaryTrace, BallScalar],
    n: int,
    p: int,
    coords: str = "cart",
) -> BoundaryTrace:
    """Build an (n, p) BoundaryTrace from an evaluator, a constant or a function.

    Args:
        g: g(x, y, z) on the unit sphere (coords="cart"), g(r, lam, th)
           with r = 1 (coords="sph"), a constant, an existing trace or a
           BallScalar whose trace is taken
        n: Fourier length in lam
        p: Fourier length in th
    """
    check_sizes(1, n, p)
    if isinstance(g, BoundaryTrace):
        return g.resized(n, p)
    if isinstance(g, BallScalar):
        return boundary_trace(g).resized(n, p)
    if not callable(g):
        data = np.zeros((n, p), dtype=complex)
        data[n // 2, p // 2] = complex(g)
        return BoundaryTrace(data, complex(g).imag == 0)

    lam, th = np.meshgrid(fourier_points(n), fourier_points(p), indexing="ij")
    if coords == "sph":
        values = g(np.ones_like(lam), lam, th)
    else:
        values = g(*spherical_to_cartesian(1.0, lam, th))
    values = np.broadcast_to(np.asarray(values, dtype=complex), lam.shape)
    return BoundaryTrace(trace_vals2coeffs(values), not np.any(values.imag))


def sum2_boundary(g: BoundaryTrace):
    """Surface integral of g over the unit sphere."""
    value = 2.0 * np.pi * (g.data[g.n // 2, :] @ polar_weights(g.p))
    return value.real if g.real else complex(value)
