"""Conversion between Chebyshev and Legendre coefficients.

Both conversion matrices are built column by column with the three-term
recurrences, applying multiplication by x in the target basis.
"""

from functools import lru_cache

import numpy as np
from numpy.polynomial import chebyshev as cheb
from numpy.polynomial import legendre as leg


def _mulx(mulx, column: np.ndarray) -> np.ndarray:
    # mulx drops trailing zeros, so pad back to the column length
    out = np.zeros(column.size)
    product = mulx(column)[: column.size]
    out[: product.size] = product
    return out


@lru_cache(maxsize=32)
def _legendre_to_chebyshev(n: int) -> np.ndarray:
    # column k holds the Chebyshev coefficients of P_k
    out = np.zeros((n, n))
    if n == 0:
        return out
    out[0, 0] = 1.0
    if n > 1:
        out[1, 1] = 1.0
    for k in range(1, n - 1):
        # (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
        x_pk = _mulx(cheb.chebmulx, out[:, k])
        out[:, k + 1] = ((2 * k + 1) * x_pk - k * out[:, k - 1]) / (k + 1)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=32)
def _chebyshev_to_legendre(n: int) -> np.ndarray:
    # column k holds the Legendre coefficients of T_k
    out = np.zeros((n, n))
    if n == 0:
        return out
    out[0, 0] = 1.0
    if n > 1:
        out[1, 1] = 1.0
    for k in range(1, n - 1):
        # T_{k+1} = 2 x T_k - T_{k-1}
        x_tk = _mulx(leg.legmulx, out[:, k])
        out[:, k + 1] = 2.0 * x_tk - out[:, k - 1]
    out.setflags(write=False)
    return out


def cheb2leg(c: np.ndarray, axis: int = 0) -> np.ndarray:
    """Legendre coefficients of a Chebyshev series along one axis."""
    c = np.moveaxis(np.asarray(c), axis, 0)
    out = np.tensordot(_chebyshev_to_legendre(c.shape[0]), c, axes=(1, 0))
    return np.moveaxis(out, 0, axis)


def leg2cheb(c: np.ndarray, axis: int = 0) -> np.ndarray:
    """Chebyshev coefficients of a Legendre series along one axis."""
    c = np.moveaxis(np.asarray(c), axis, 0)
    out = np.tensordot(_legendre_to_chebyshev(c.shape[0]), c, axes=(1, 0))
    return np.moveaxis(out, 0, axis)
