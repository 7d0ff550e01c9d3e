"""Helmholtz and Poisson solver on the unit ball.

Solves  lap(u) + K^2 u = f  with Dirichlet (u = g) or Neumann (du/dr = g)
data on the unit sphere. Multiplying by r^2 sin(th)^2 removes the
coordinate singularities, and the equation decouples in the azimuthal
mode j. Each mode is a generalized Sylvester equation

    L_r U M_sin2^T + S_02 U L_th(j)^T = S_02 F

in Chebyshev (ultraspherical) coefficients in r and Fourier coefficients in
th, closed by two boundary rows at r = 1 and r = -1 of the doubled domain.
The Neumann problem with K = 0 is singular in mode j = 0; that mode is
solved through a Legendre expansion in cos(th) instead.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Tuple, Union

import numpy as np

from .boundary import BoundaryTrace, sample_boundary, sum2_boundary
from .calculus import mul_r, mul_sin, sum3
from .construct import project_bmc, simplify
from .errors import InvalidSizeError, NumericalRankError, SolvabilityError
from .grid import check_sizes, mode_numbers
from .legendre import cheb2leg, leg2cheb
from .sylvester import solve_mode_sylvester
from .tensor import BallScalar, CffTensor, Number
from .ultraspherical import mult_sin2, theta_operator, ultra_operators

logger = logging.getLogger(__name__)

# Relative tolerance of the Neumann compatibility check
COMPATIBILITY_TOL = 1e-8

# Extra modes added to the operand sizes when no sizes are given
SIZE_MARGIN = 4


class BoundaryKind(str, Enum):
    """Type of boundary condition."""
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"


def boundary_rows(kind: BoundaryKind, m: int) -> np.ndarray:
    """Functionals giving u (Dirichlet) or du/dr (Neumann) at r = 1 and r = -1."""
    i = np.arange(m, dtype=float)
    alternating = 1.0 - 2.0 * (np.arange(m) % 2)
    if BoundaryKind(kind) is BoundaryKind.DIRICHLET:
        return np.vstack([np.ones(m), alternating])
    return np.vstack([i**2, -alternating * i**2])


@dataclass(frozen=True)
class BoundaryData:
    """Boundary values on r = 1 and their image on r = -1 of the doubled domain."""
    kind: BoundaryKind
    gplus: BoundaryTrace

    @property
    def gminus(self) -> np.ndarray:
        """G- from G+: the point (-1, lam, th) is (1, lam + pi, pi - th).

        For Neumann data the radial direction also flips.
        """
        signs = 1.0 - 2.0 * (mode_numbers(self.gplus.p) % 2)
        if self.kind is BoundaryKind.NEUMANN:
            signs = -signs
        return self.gplus.data * signs[None, :]

    def values(self, j: int) -> np.ndarray:
        slot = j + self.gplus.n // 2
        return np.vstack([self.gplus.data[slot], self.gminus[slot]])


@dataclass(frozen=True)
class ModeOperators:
    """Matrices of the Sylvester equation for one azimuthal mode."""
    j: int
    l_r: object
    s02: object
    m_sin2: object
    l_theta: object
    rows: np.ndarray


def assemble_mode(j: int, k2: float, m: int, p: int, kind: BoundaryKind = BoundaryKind.DIRICHLET) -> ModeOperators:
    """Build L_r, S_02, M_sin2, L_th(j) and the boundary rows for mode j."""
    ops = ultra_operators(m, k2)
    return ModeOperators(
        j=j, l_r=ops.radial(), s02=ops.s02, m_sin2=mult_sin2(p),
        l_theta=theta_operator(j, p), rows=boundary_rows(kind, m),
    )


def default_sizes(*functions: BallScalar) -> Tuple[int, int, int]:
    """Operand sizes plus a margin, with even angular sizes."""
    m = max(f.m for f in functions) + SIZE_MARGIN
    n = max(f.n for f in functions) + SIZE_MARGIN
    p = max(f.p for f in functions) + SIZE_MARGIN
    return m, n + n % 2, p + p % 2


def _scaled_rhs(rhs: BallScalar, m: int, n: int, p: int, sin2: bool = True) -> np.ndarray:
    """Coefficients of r^2 sin(th)^2 f (or r^2 f) truncated to (m, n, p)."""
    data = mul_r(mul_r(rhs.coeffs.data))
    if sin2:
        data = mul_sin(mul_sin(data, 2), 2)
    return CffTensor(data).resized(m, n, p).data


def _fold_cosine(c: np.ndarray) -> np.ndarray:
    """Cosine-series coefficients a_0..a_{p/2-1} of an even Fourier series (last axis)."""
    p = c.shape[-1]
    h = p // 2
    a = np.zeros(c.shape[:-1] + (h,), dtype=complex)
    a[..., 0] = c[..., h]
    a[..., 1:] = c[..., h + 1:] + c[..., h - 1:0:-1]
    return a


def _unfold_cosine(a: np.ndarray, p: int) -> np.ndarray:
    h = p // 2
    c = np.zeros(a.shape[:-1] + (p,), dtype=complex)
    c[..., h] = a[..., 0]
    c[..., h + 1:] = 0.5 * a[..., 1:]
    c[..., h - 1:0:-1] = 0.5 * a[..., 1:]
    return c


def solve_axisymmetric_neumann(F0: np.ndarray, g0: np.ndarray) -> np.ndarray:
    """Mode j = 0 of the Neumann Poisson problem via a Legendre expansion in cos(th).

    Args:
        F0: m x p coefficients of r^2 f for mode j = 0
        g0: p coefficients of the Neumann data for mode j = 0

    Returns:
        m x p coefficients of u for mode j = 0, with the T_0 P_0
        coefficient pinned to zero
    """
    m, p = F0.shape
    f_leg = cheb2leg(_fold_cosine(F0), axis=1)
    g_leg = cheb2leg(_fold_cosine(g0))
    ops = ultra_operators(m, 0.0)
    s02 = ops.s02.toarray()
    rows = boundary_rows(BoundaryKind.NEUMANN, m)
    u_leg = np.zeros_like(f_leg)

    for l in range(f_leg.shape[1]):
        # u_l(-r) = (-1)^l u_l(r), so du/dr flips by (-1)^(l+1) at r = -1
        system = np.vstack([ops.radial(shift=-float(l * (l + 1))).toarray()[: m - 2], rows])
        target = np.concatenate([(s02 @ f_leg[:, l])[: m - 2], [g_leg[l], (-1) ** (l + 1) * g_leg[l]]])
        if l == 0:
            # constants are in the kernel: fix the T_0 coefficient to zero
            u_leg[1:, 0] = np.linalg.lstsq(system[:, 1:], target, rcond=None)[0]
            continue
        try:
            u_leg[:, l] = np.linalg.solve(system, target)
        except np.linalg.LinAlgError:
            raise NumericalRankError(f"Singular Legendre system l={l} in mode j=0", 0)

    logger.debug(f"Solved {f_leg.shape[1]} radial Legendre problems for mode j=0")
    return _unfold_cosine(leg2cheb(u_leg, axis=1), p)


def check_compatibility(rhs: BallScalar, gplus: BoundaryTrace) -> float:
    """Verify that the boundary flux matches the volume integral of the right-hand side.

    Raises:
        SolvabilityError: if they differ by more than COMPATIBILITY_TOL relative
            to the data scale, floored at 1
    """
    flux = sum2_boundary(gplus)
    volume = sum3(rhs)
    residual = abs(flux - volume)
    scale = max(abs(flux), abs(volume), rhs.vscale, float(np.max(np.abs(gplus.values()))), 1.0)
    if residual > COMPATIBILITY_TOL * scale:
        raise SolvabilityError(
            f"Neumann data incompatible with right-hand side: flux {flux:.6e} vs integral {volume:.6e}",
            residual,
        )
    if residual > 1e-12 * scale:
        logger.warning(f"Compatibility residual {residual:.3e}")
    return residual


def helmholtz_solve(
    rhs: Union[BallScalar, Number],
    k2: float,
    bc: Union[Callable, BoundaryTrace, BallScalar, Number],
    sizes: Optional[Tuple[int, int, int]] = None,
    kind: Union[BoundaryKind, str] = BoundaryKind.DIRICHLET,
    coords: str = "cart",
    method: Optional[str] = None,
) -> BallScalar:
    """Solve lap(u) + k2 u = rhs in the unit ball.

    Args:
        rhs: Right-hand side
        k2: Signed real K^2 (negative values arise from implicit time stepping)
        bc: Boundary data: evaluator on the sphere, trace, function or constant
        sizes: Discretization (m, n, p) of the solution; defaults to the
               right-hand side sizes plus a margin
        kind: "dirichlet" or "neumann"
        coords: Coordinates of a callable bc ("cart" or "sph")
        method: Sylvester method, defaults to the configured one

    Returns:
        The solution; for K = 0 with Neumann data the T_0 P_0 Legendre
        coefficient of mode j = 0 is zero

    Raises:
        SolvabilityError: Neumann data with K = 0 violating the flux balance
        NumericalRankError: a mode system is singular
    """
    kind = BoundaryKind(kind)
    if not isinstance(rhs, BallScalar):
        value = complex(rhs)
        rhs = BallScalar(CffTensor.constant(value), True, abs(value), value.imag == 0)
    m, n, p = sizes if sizes is not None else default_sizes(rhs)
    check_sizes(m, n, p)
    if m < 4:
        raise InvalidSizeError(f"Radial size must be at least 4 for a boundary value problem, got {m}")

    data = BoundaryData(kind, sample_boundary(bc, n, p, coords))
    axisymmetric_neumann = kind is BoundaryKind.NEUMANN and k2 == 0
    if axisymmetric_neumann:
        check_compatibility(rhs, data.gplus)

    F = _scaled_rhs(rhs, m, n, p)
    U = np.zeros((m, n, p), dtype=complex)
    for j in mode_numbers(n):
        slot = j + n // 2
        if axisymmetric_neumann and j == 0:
            F0 = _scaled_rhs(rhs, m, n, p, sin2=False)[:, slot, :]
            U[:, slot, :] = solve_axisymmetric_neumann(F0, data.gplus.data[slot])
            continue
        ops = assemble_mode(int(j), k2, m, p, kind)
        U[:, slot, :] = solve_mode_sylvester(
            ops.l_r, ops.m_sin2, ops.s02, ops.l_theta, F[:, slot, :],
            ops.rows, data.values(int(j)), mode=int(j), method=method,
        )

    logger.info(f"Solved {kind.value} Helmholtz problem (K^2={k2}) at {m}x{n}x{p}")
    # the mode-by-mode solves meet the pole and origin conditions only to solver accuracy
    return simplify(project_bmc(CffTensor(U)), rhs.real and data.gplus.real, rhs.resolved)
