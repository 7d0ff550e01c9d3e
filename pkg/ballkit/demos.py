"""Time-stepping demonstrations with first-order IMEX (implicit diffusion).

Advection-diffusion:  dc/dt + v . grad(c) = D lap(c), no-flux boundary.
Induction:            dB/dt = curl(u x B) + D lap(B), with B kept as
                      poloidal and toroidal scalars under homogeneous
                      Dirichlet data.
"""

import logging
from typing import List, Optional, Tuple, Union

import numpy as np

from .construct import construct
from .decomposition import PTScalars, pt_decompose, pt_to_vector
from .helmholtz import BoundaryKind, helmholtz_solve
from .tensor import BallScalar
from .vector import BallVector, cross, curl, dot, grad, position

logger = logging.getLogger(__name__)

ADVDIFF_DIFFUSIVITY = 1.0 / 5000.0
INDUCTION_DIFFUSIVITY = 1.0 / 3000.0
TIME_STEP = 5e-2


def _gaussian(x, y, z):
    return np.exp(-5.0 * (x**2 + y**2 + z**2))


def stirring_field() -> BallVector:
    """curl(z exp(-5 r^2) (x, y, z)), a toroidal field tangent to the sphere."""
    return curl(position() * construct(lambda x, y, z: z * _gaussian(x, y, z)))


def dynamo_flow() -> BallVector:
    """u = curl(exp(-5 r^2) (x^2, y^2, x z))."""
    potential = BallVector.from_functions(
        lambda x, y, z: x**2 * _gaussian(x, y, z),
        lambda x, y, z: y**2 * _gaussian(x, y, z),
        lambda x, y, z: x * z * _gaussian(x, y, z),
    )
    return curl(potential)


def solve_sizes(n: Union[int, Tuple[int, int, int]]) -> Tuple[int, int, int]:
    """Solver sizes from a cubic n or an explicit (m, n, p); angular sizes rounded up to even."""
    m, n_lam, p = (n, n, n) if isinstance(n, int) else n
    return m, n_lam + n_lam % 2, p + p % 2


def imex_shift(diffusivity: float, dt: float) -> float:
    """K^2 of the implicit step: lap(c_new) + K^2 c_new = K^2 c_old + ..."""
    return -1.0 / (diffusivity * dt)


def advection_diffusion(
    steps: int,
    n: Union[int, Tuple[int, int, int]],
    velocity: Optional[BallVector] = None,
    diffusivity: float = ADVDIFF_DIFFUSIVITY,
    dt: float = TIME_STEP,
) -> List[BallScalar]:
    """Advect and diffuse c0 = -x exp(-5 r^2) in the stirring field.

    Each step solves
        lap(c) + K^2 c = K^2 c_old + (1/D) v . grad(c_old),  dc/dr = 0 on the sphere
    at size n x n x n, or at the given (m, n, p).

    Returns:
        Snapshots c0, c1, ..., c_steps
    """
    sizes = solve_sizes(n)
    k2 = imex_shift(diffusivity, dt)
    v = stirring_field() if velocity is None else velocity
    c = construct(lambda x, y, z: -x * _gaussian(x, y, z))
    snapshots = [c]
    for step in range(steps):
        rhs = c * k2 + dot(v, grad(c)) * (1.0 / diffusivity)
        c = helmholtz_solve(rhs, k2, 0.0, sizes=sizes, kind=BoundaryKind.NEUMANN)
        snapshots.append(c)
        logger.info(f"Advection-diffusion step {step + 1}/{steps}: integral {c.sum3():.3e}")
    return snapshots


def induction(
    steps: int,
    n: Union[int, Tuple[int, int, int]],
    diffusivity: float = INDUCTION_DIFFUSIVITY,
    dt: float = TIME_STEP,
) -> List[PTScalars]:
    """Evolve B0 = curl(z exp(-5 r^2) (x, y, z)) under the induction equation.

    Per step the field is rebuilt from its scalars, the nonlinear term
    N = curl(u x B) is decomposed, and each scalar is advanced with a
    Helmholtz solve
        lap(s) + K^2 s = K^2 (s_old + dt s_N),  s = 0 on the sphere.

    Returns:
        PT scalars of B after 0, 1, ..., steps steps
    """
    sizes = solve_sizes(n)
    k2 = imex_shift(diffusivity, dt)
    u = dynamo_flow()
    pt = pt_decompose(stirring_field())
    snapshots = [pt]
    for step in range(steps):
        b = pt_to_vector(pt)
        forcing = pt_decompose(curl(cross(u, b)))
        phi = helmholtz_solve((pt.phi + forcing.phi * dt) * k2, k2, 0.0, sizes=sizes, kind=BoundaryKind.DIRICHLET)
        psi = helmholtz_solve((pt.psi + forcing.psi * dt) * k2, k2, 0.0, sizes=sizes, kind=BoundaryKind.DIRICHLET)
        pt = PTScalars(phi, psi, gauge=False)
        snapshots.append(pt)
        logger.info(f"Induction step {step + 1}/{steps}: scalars at {phi.sizes}, {psi.sizes}")
    return snapshots
