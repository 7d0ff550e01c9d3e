"""Banded operators of the ultraspherical method and Fourier theta operators.

Radial operators map Chebyshev coefficients into C^(1) or C^(2)
(ultraspherical) coefficients. Theta operators act on Fourier coefficients
ordered k = -p/2..p/2-1.
"""

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .grid import mode_numbers


def diff1(m: int) -> sparse.csr_matrix:
    """First derivative, Chebyshev T -> C^(1): T_n' = n C^(1)_{n-1}."""
    return sparse.diags([np.arange(1, m, dtype=float)], [1], shape=(m, m), format="csr")


def diff2(m: int) -> sparse.csr_matrix:
    """Second derivative, Chebyshev T -> C^(2): T_n'' = 2n C^(2)_{n-2}."""
    return sparse.diags([2.0 * np.arange(2, m, dtype=float)], [2], shape=(m, m), format="csr")


def convert0(m: int) -> sparse.csr_matrix:
    """Conversion T -> C^(1)."""
    main = np.full(m, 0.5)
    main[0] = 1.0
    return sparse.diags([main, np.full(max(m - 2, 0), -0.5)], [0, 2], shape=(m, m), format="csr")


def convert1(m: int) -> sparse.csr_matrix:
    """Conversion C^(1) -> C^(2)."""
    n = np.arange(m, dtype=float)
    return sparse.diags([1.0 / (n + 1.0), -1.0 / (n[2:] + 1.0)], [0, 2], shape=(m, m), format="csr")


def mult_x2(m: int) -> sparse.csr_matrix:
    """Multiplication by x in the C^(2) basis.

    x C_n = (n+1)/(2(n+2)) C_{n+1} + (n+3)/(2(n+2)) C_{n-1}
    """
    n = np.arange(m, dtype=float)
    lower = (n[:-1] + 1.0) / (2.0 * (n[:-1] + 2.0))
    upper = (n[1:] + 3.0) / (2.0 * (n[1:] + 2.0))
    return sparse.diags([lower, upper], [-1, 1], shape=(m, m), format="csr")


@dataclass(frozen=True)
class UltraOperators:
    """Radial operators for r^2 u'' + 2 r u' + K^2 r^2 u, mapped into C^(2)."""
    m: int
    k2: float
    d1: sparse.csr_matrix
    d2: sparse.csr_matrix
    s0: sparse.csr_matrix
    s1: sparse.csr_matrix
    mr: sparse.csr_matrix
    mr2: sparse.csr_matrix

    @property
    def s02(self) -> sparse.csr_matrix:
        return (self.s1 @ self.s0).tocsr()

    def radial(self, shift: float = 0.0) -> sparse.csr_matrix:
        """L_r = M_r2 D2 + 2 M_r S1 D1 + K^2 M_r2 S1 S0 + shift * S1 S0."""
        op = self.mr2 @ self.d2 + 2.0 * (self.mr @ self.s1 @ self.d1) + self.k2 * (self.mr2 @ self.s02)
        if shift:
            op = op + shift * self.s02
        return op.tocsr()


def ultra_operators(m: int, k2: float = 0.0) -> UltraOperators:
    mr = mult_x2(m)
    return UltraOperators(
        m=m, k2=k2, d1=diff1(m), d2=diff2(m), s0=convert0(m), s1=convert1(m),
        mr=mr, mr2=(mr @ mr).tocsr(),
    )


# ---------------------------------------------------------------------------
# Fourier operators in theta
# ---------------------------------------------------------------------------

def theta_diff(p: int) -> sparse.csr_matrix:
    """D = diag(1j*k)."""
    return sparse.diags([1j * mode_numbers(p)], [0], shape=(p, p), format="csr")


def mult_sin2(p: int) -> sparse.csr_matrix:
    """Multiplication by sin(th)^2 = 1/2 - (exp(2j th) + exp(-2j th))/4."""
    return sparse.diags(
        [np.full(p, 0.5 + 0j), np.full(p - 2, -0.25 + 0j), np.full(p - 2, -0.25 + 0j)],
        [0, -2, 2], shape=(p, p), format="csr",
    )


def mult_sincos(p: int) -> sparse.csr_matrix:
    """Multiplication by sin(th) cos(th) = (exp(2j th) - exp(-2j th))/(4j)."""
    return sparse.diags(
        [np.full(p - 2, 1.0 / 4j), np.full(p - 2, -1.0 / 4j)],
        [-2, 2], shape=(p, p), format="csr",
    )


def theta_operator(j: int, p: int) -> sparse.csr_matrix:
    """L_th(j) = M_sin2 D^2 + M_sincos D - j^2 I, i.e. u -> sin(th) d/dth(sin(th) du/dth) - j^2 u."""
    d = theta_diff(p)
    op = mult_sin2(p) @ (d @ d) + mult_sincos(p) @ d - float(j * j) * sparse.identity(p, format="csr")
    return op.tocsr()


def bandwidth(matrix) -> int:
    """Largest |row - col| over the nonzero entries."""
    coo = sparse.coo_matrix(matrix)
    coo.eliminate_zeros()
    if coo.nnz == 0:
        return 0
    return int(np.max(np.abs(coo.row - coo.col)))
