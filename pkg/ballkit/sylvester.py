"""Per-mode generalized Sylvester solves with boundary bordering.

Solves  A X B^T + C X D^T = F  for an m x p matrix X subject to two
boundary rows  R X = G  (R is 2 x m, G is 2 x p). The last two rows of X
are eliminated with the boundary rows; the remaining system holds on the
first m - 2 rows.
"""

import logging
from typing import Optional

import numpy as np
from scipy import linalg, sparse
from scipy.sparse.linalg import spsolve

from . import config
from .errors import NumericalRankError

logger = logging.getLogger(__name__)


def _dense(matrix) -> np.ndarray:
    return matrix.toarray() if sparse.issparse(matrix) else np.asarray(matrix)


def border(A, C, rows: np.ndarray, F: np.ndarray, B, D, G: np.ndarray):
    """Eliminate the last two unknowns of each column with the boundary rows.

    Returns:
        (A_red, C_red, rhs, back) where back(X_top) restores the full X
    """
    A, C, B, D = _dense(A), _dense(C), _dense(B), _dense(D)
    m = A.shape[0]
    top = slice(0, m - 2)
    rows_a, rows_b = rows[:, : m - 2], rows[:, m - 2:]
    inv_rows_b = np.linalg.inv(rows_b)
    inv_g = inv_rows_b @ G

    A_red = A[top, : m - 2] - A[top, m - 2:] @ inv_rows_b @ rows_a
    C_red = C[top, : m - 2] - C[top, m - 2:] @ inv_rows_b @ rows_a
    rhs = (C[top] @ F) - A[top, m - 2:] @ inv_g @ B.T - C[top, m - 2:] @ inv_g @ D.T

    def back(X_top: np.ndarray) -> np.ndarray:
        X_bottom = inv_g - inv_rows_b @ rows_a @ X_top
        return np.vstack([X_top, X_bottom])

    return A_red, C_red, rhs, back


def solve_kronecker(A_red, C_red, B, D, rhs: np.ndarray, mode: int = 0) -> np.ndarray:
    """Solve A X B^T + C X D^T = rhs as one sparse linear system (column-major vec)."""
    q, p = rhs.shape
    system = sparse.kron(sparse.csr_matrix(B), sparse.csr_matrix(A_red)) + sparse.kron(
        sparse.csr_matrix(D), sparse.csr_matrix(C_red)
    )
    system = system.tocsc()
    with np.errstate(all="ignore"):
        x = spsolve(system, rhs.reshape(-1, order="F"))
    if not np.all(np.isfinite(x)):
        raise NumericalRankError(f"Singular system for mode j={mode}", mode)
    return np.asarray(x).reshape((q, p), order="F")


def solve_bartels_stewart(A_red, C_red, B, D, rhs: np.ndarray, mode: int = 0) -> np.ndarray:
    """Reduce to A' X + X B' = Q and solve with the Schur-based Bartels-Stewart method."""
    B, D = _dense(B), _dense(D)
    try:
        left = linalg.solve(C_red, A_red)
        q = linalg.solve(C_red, rhs)
        # X B^T = Q  =>  X = Q B^-T
        b_inv_t = linalg.inv(B).T
        return linalg.solve_sylvester(left, D.T @ b_inv_t, q @ b_inv_t)
    except (linalg.LinAlgError, ValueError) as e:
        raise NumericalRankError(f"Singular system for mode j={mode}: {e}", mode)


def solve_mode_sylvester(
    L_r,
    M_sin2,
    S_02,
    L_theta,
    F: np.ndarray,
    rows: np.ndarray,
    values: np.ndarray,
    mode: int = 0,
    method: Optional[str] = None,
) -> np.ndarray:
    """Solve L_r U M_sin2^T + S_02 U L_theta^T = S_02 F with boundary rows.

    Args:
        L_r, S_02: m x m radial operators
        M_sin2, L_theta: p x p theta operators
        F: m x p right-hand side coefficients
        rows: 2 x m boundary functionals
        values: 2 x p boundary values (rows @ U = values)
        mode: Azimuthal mode, for error messages
        method: "kronecker" or "bartels-stewart", defaults to the configured one

    Returns:
        m x p coefficient matrix U

    Raises:
        NumericalRankError: if the reduced system is singular
    """
    method = method or config.get_sylvester_method()
    A_red, C_red, rhs, back = border(L_r, S_02, rows, F, M_sin2, L_theta, values)
    if method == "bartels-stewart":
        X_top = solve_bartels_stewart(A_red, C_red, M_sin2, L_theta, rhs, mode)
    elif method == "kronecker":
        X_top = solve_kronecker(A_red, C_red, M_sin2, L_theta, rhs, mode)
    else:
        raise ValueError(f"Unknown Sylvester method: {method}")
    U = back(X_top)
    logger.debug(f"Mode j={mode}: solved {U.shape} system with {method}")
    return U


def sylvester_residual(L_r, M_sin2, S_02, L_theta, F: np.ndarray, U: np.ndarray) -> np.ndarray:
    """Residual of the first m - 2 rows of L_r U M_sin2^T + S_02 U L_theta^T - S_02 F."""
    L_r, M_sin2, S_02, L_theta = _dense(L_r), _dense(M_sin2), _dense(S_02), _dense(L_theta)
    full = L_r @ U @ M_sin2.T + S_02 @ U @ L_theta.T - S_02 @ F
    return full[:-2]
