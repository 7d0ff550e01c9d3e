"""Vector fields on the unit ball in Cartesian components."""

import logging
from dataclasses import dataclass
from typing import Callable, Iterator, Tuple, Union

import numpy as np

from .calculus import diff_cart, laplacian, mul_cos, mul_sin, sum3
from .construct import construct, simplify
from .tensor import BallScalar, CffTensor, Number, common_shape

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class BallVector:
    """Cartesian components (vx, vy, vz) of a vector field."""
    vx: BallScalar
    vy: BallScalar
    vz: BallScalar

    def __iter__(self) -> Iterator[BallScalar]:
        return iter((self.vx, self.vy, self.vz))

    @classmethod
    def from_functions(cls, fx: Callable, fy: Callable, fz: Callable, coords: str = "cart") -> "BallVector":
        return cls(construct(fx, coords), construct(fy, coords), construct(fz, coords))

    @property
    def sizes(self) -> Tuple[int, int, int]:
        return common_shape(*(c.sizes for c in self))

    @property
    def vscale(self) -> float:
        return max(c.vscale for c in self)

    def __add__(self, other: "BallVector") -> "BallVector":
        return BallVector(*(a + b for a, b in zip(self, other)))

    def __sub__(self, other: "BallVector") -> "BallVector":
        return BallVector(*(a - b for a, b in zip(self, other)))

    def __neg__(self) -> "BallVector":
        return BallVector(-self.vx, -self.vy, -self.vz)

    def __mul__(self, other: Union[BallScalar, Number]) -> "BallVector":
        return BallVector(*(c * other for c in self))

    __rmul__ = __mul__

    def __call__(self, a, b, c, coords: str = "cart") -> np.ndarray:
        """Evaluate at points; the components are stacked on the last axis."""
        return np.stack([comp(a, b, c, coords=coords) for comp in self], axis=-1)

    def norm(self) -> float:
        """L2 norm of the field over the ball."""
        return float(np.sqrt(max(np.real(sum3(dot(self, self.conj()))), 0.0)))

    def conj(self) -> "BallVector":
        return BallVector(*(c.conj() for c in self))


def _coordinate(axis: str) -> BallScalar:
    index = "xyz".index(axis)
    return construct(lambda x, y, z: (x, y, z)[index])


def position() -> BallVector:
    """The identity field (x, y, z) = r e_r."""
    return BallVector(_coordinate("x"), _coordinate("y"), _coordinate("z"))


def grad(f: BallScalar) -> BallVector:
    return BallVector(diff_cart(f, "x"), diff_cart(f, "y"), diff_cart(f, "z"))


def div(v: BallVector) -> BallScalar:
    return diff_cart(v.vx, "x") + diff_cart(v.vy, "y") + diff_cart(v.vz, "z")


def curl(v: BallVector) -> BallVector:
    return BallVector(
        diff_cart(v.vz, "y") - diff_cart(v.vy, "z"),
        diff_cart(v.vx, "z") - diff_cart(v.vz, "x"),
        diff_cart(v.vy, "x") - diff_cart(v.vx, "y"),
    )


def dot(v: BallVector, w: BallVector) -> BallScalar:
    return v.vx * w.vx + v.vy * w.vy + v.vz * w.vz


def cross(v: BallVector, w: BallVector) -> BallVector:
    return BallVector(
        v.vy * w.vz - v.vz * w.vy,
        v.vz * w.vx - v.vx * w.vz,
        v.vx * w.vy - v.vy * w.vx,
    )


def vector_laplacian(v: BallVector) -> BallVector:
    return BallVector(*(laplacian(c) for c in v))


# ---------------------------------------------------------------------------
# Spherical components
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SphericalComponents:
    """V_r, V_lam, V_th on the doubled domain.

    V_lam and V_th are not themselves smooth functions on the ball in
    general; they are kept as CFF tensors without that assumption.
    """
    vr: BallScalar
    vlam: BallScalar
    vth: BallScalar


def _combine(*terms: np.ndarray) -> np.ndarray:
    shape = common_shape(*(t.shape for t in terms))
    return sum(CffTensor(t).resized(*shape).data for t in terms)


def _wrap(data: np.ndarray, *sources: BallScalar) -> BallScalar:
    return simplify(CffTensor(data), all(s.real for s in sources), all(s.resolved for s in sources))


def cart2sph_components(v: BallVector) -> SphericalComponents:
    """Project onto e_r, e_lam, e_th with coefficient-space trig multiplications.

    V_r   = sin(th) (cos(lam) Vx + sin(lam) Vy) + cos(th) Vz
    V_lam = -sin(lam) Vx + cos(lam) Vy
    V_th  = cos(th) (cos(lam) Vx + sin(lam) Vy) - sin(th) Vz
    """
    x, y, z = (c.coeffs.data for c in v)
    horizontal = _combine(mul_cos(x, 1), mul_sin(y, 1))
    vr = _combine(mul_sin(horizontal, 2), mul_cos(z, 2))
    vlam = _combine(-mul_sin(x, 1), mul_cos(y, 1))
    vth = _combine(mul_cos(horizontal, 2), -mul_sin(z, 2))
    return SphericalComponents(_wrap(vr, *v), _wrap(vlam, *v), _wrap(vth, *v))


def sph2cart_components(s: SphericalComponents) -> BallVector:
    """Inverse of cart2sph_components.

    Vx = cos(lam) (sin(th) V_r + cos(th) V_th) - sin(lam) V_lam
    Vy = sin(lam) (sin(th) V_r + cos(th) V_th) + cos(lam) V_lam
    Vz = cos(th) V_r - sin(th) V_th
    """
    r, lam, th = (c.coeffs.data for c in (s.vr, s.vlam, s.vth))
    meridional = _combine(mul_sin(r, 2), mul_cos(th, 2))
    vx = _combine(mul_cos(meridional, 1), -mul_sin(lam, 1))
    vy = _combine(mul_sin(meridional, 1), mul_cos(lam, 1))
    vz = _combine(mul_cos(r, 2), -mul_sin(th, 2))
    sources = (s.vr, s.vlam, s.vth)
    return BallVector(_wrap(vx, *sources), _wrap(vy, *sources), _wrap(vz, *sources))


def radial_trace_field(v: BallVector) -> BallScalar:
    """x Vx + y Vy + z Vz, equal to V_r on the unit sphere."""
    x = position()
    return dot(x, v)
