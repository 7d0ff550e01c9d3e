"""Poloidal-toroidal and Helmholtz-Hodge decompositions of vector fields.

A divergence-free field V is written as V = P + T with
    T = curl(Psi x),  P = curl(curl(Phi x)),  x = (x, y, z) = r e_r.
The scalars follow from the angular Laplacian
    lap1 u = (1/sin(th)) d/dth(sin(th) du/dth) + (1/sin(th)^2) d^2u/dlam^2:
    sin(th)^2 lap1 Phi = -r sin(th)^2 V_r
    sin(th)^2 lap1 Psi = -sin(th) (d/dth(V_lam sin(th)) - d/dlam V_th)
and both scalars have zero (j, k) = (0, 0) Fourier mode for every r.
"""

import logging
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

import numpy as np
from scipy.linalg import solve_banded

from .boundary import boundary_trace
from .calculus import diff_angle, mul_r, mul_sin
from .construct import simplify
from .errors import NotDivergenceFreeError, NumericalRankError
from .helmholtz import BoundaryKind, default_sizes, helmholtz_solve
from .tensor import BallScalar, CffTensor, common_shape
from .ultraspherical import theta_operator
from .vector import BallVector, cart2sph_components, curl, div, grad, position, radial_trace_field

logger = logging.getLogger(__name__)

# Divergence allowed relative to the field scale
DIVERGENCE_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class PTScalars:
    """Poloidal scalar phi and toroidal scalar psi."""
    phi: BallScalar
    psi: BallScalar
    gauge: bool = True


def _to_banded(matrix: np.ndarray, lower: int, upper: int) -> np.ndarray:
    p = matrix.shape[0]
    bands = np.zeros((lower + upper + 1, p), dtype=matrix.dtype)
    for offset in range(-lower, upper + 1):
        diagonal = np.diagonal(matrix, offset)
        if offset >= 0:
            bands[upper - offset, offset:] = diagonal
        else:
            bands[upper - offset, : p + offset] = diagonal
    return bands


def solve_angular(rhs: np.ndarray) -> np.ndarray:
    """Solve L_th(j) x = rhs along th for every Chebyshev index and mode j.

    At j = 0 the k = 0 row is replaced by the gauge condition x_0 = 0.
    """
    m, n, p = rhs.shape
    out = np.zeros_like(rhs, dtype=complex)
    for slot in range(n):
        j = slot - n // 2
        matrix = theta_operator(j, p).toarray()
        b = rhs[:, slot, :].T.copy()
        if j == 0:
            matrix[p // 2, :] = 0.0
            matrix[p // 2, p // 2] = 1.0
            b[p // 2, :] = 0.0
        with np.errstate(all="ignore"):
            x = solve_banded((2, 2), _to_banded(matrix, 2, 2), b)
        if not np.all(np.isfinite(x)):
            raise NumericalRankError(f"Singular angular system for mode j={j}", j)
        out[:, slot, :] = x.T
    return out


def _padded(data: np.ndarray, shape) -> np.ndarray:
    return CffTensor(data).resized(*shape).data


def divergence_scale(v: BallVector) -> float:
    return max(v.vscale, 1.0)


def check_divergence_free(v: BallVector, tol: float = DIVERGENCE_TOL) -> float:
    """Largest sampled |div V|; raises if it exceeds tol times the field scale."""
    magnitude = div(v).max_abs()
    if magnitude > tol * divergence_scale(v):
        raise NotDivergenceFreeError(f"Field has divergence {magnitude:.3e}", magnitude)
    return magnitude


def pt_decompose(v: BallVector, tol: float = DIVERGENCE_TOL) -> PTScalars:
    """Poloidal and toroidal scalars of a divergence-free field.

    Raises:
        NotDivergenceFreeError: if |div V| exceeds tol times the field scale
    """
    check_divergence_free(v, tol)
    s = cart2sph_components(v)

    # poloidal: -r sin(th)^2 V_r
    phi_rhs = -mul_sin(mul_sin(mul_r(s.vr.coeffs.data), 2), 2)

    # toroidal: -sin(th) (d/dth(V_lam sin(th)) - d/dlam V_th)
    twist = diff_angle(mul_sin(s.vlam.coeffs.data, 2), 2)
    shape = common_shape(twist.shape, s.vth.coeffs.shape)
    surface_curl = _padded(twist, shape) - _padded(diff_angle(s.vth.coeffs.data, 1), shape)
    psi_rhs = -mul_sin(surface_curl, 2)

    real = all(c.real for c in v)
    resolved = all(c.resolved for c in v)
    phi = simplify(CffTensor(solve_angular(phi_rhs)), real, resolved)
    psi = simplify(CffTensor(solve_angular(psi_rhs)), real, resolved)
    logger.debug(f"PT scalars at {phi.sizes} and {psi.sizes}")
    return PTScalars(phi, psi)


def toroidal_field(psi: BallScalar) -> BallVector:
    return curl(position() * psi)


def poloidal_field(phi: BallScalar) -> BallVector:
    return curl(curl(position() * phi))


def pt_to_vector(pt: PTScalars, separate: bool = False):
    """Rebuild the field P + T, or the pair (P, T) when separate is set."""
    poloidal = poloidal_field(pt.phi)
    toroidal = toroidal_field(pt.psi)
    if separate:
        return poloidal, toroidal
    return poloidal + toroidal


class HodgeDecomposition(NamedTuple):
    """V = grad(f) + psi with psi divergence free and tangent to the sphere."""
    f: BallScalar
    pt: PTScalars
    psi: BallVector


def helmholtz_hodge(
    v: BallVector,
    sizes: Optional[Tuple[int, int, int]] = None,
    tol: float = DIVERGENCE_TOL,
) -> HodgeDecomposition:
    """Split V into a gradient and a boundary-tangent divergence-free part.

    f solves lap(f) = div V with df/dr = V_r on the sphere; the constant in
    f is fixed by the Neumann solver's gauge.
    """
    sizes = sizes or default_sizes(*v)
    flux = boundary_trace(radial_trace_field(v))
    f = helmholtz_solve(div(v), 0.0, flux, sizes=sizes, kind=BoundaryKind.NEUMANN)
    psi = v - grad(f)
    logger.info(f"Hodge potential resolved at {f.sizes}")
    return HodgeDecomposition(f, pt_decompose(psi, tol), psi)
