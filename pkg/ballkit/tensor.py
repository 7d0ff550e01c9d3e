"""Coefficient tensors and scalar functions on the unit ball."""

import logging
from dataclasses import dataclass, field
from typing import Tuple, Union

import numpy as np

from .errors import InvalidSizeError, ShapeMismatchError

logger = logging.getLogger(__name__)

Number = Union[int, float, complex]


def resize_fourier(data: np.ndarray, n: int, axis: int) -> np.ndarray:
    """Truncate or zero-pad a Fourier axis symmetrically about mode 0."""
    old = data.shape[axis]
    if old == n:
        return data
    h = min(old, n) // 2
    shape = list(data.shape)
    shape[axis] = n
    out = np.zeros(shape, dtype=complex)
    src = [slice(None)] * data.ndim
    dst = [slice(None)] * data.ndim
    src[axis] = slice(old // 2 - h, old // 2 + h)
    dst[axis] = slice(n // 2 - h, n // 2 + h)
    out[tuple(dst)] = data[tuple(src)]
    return out


def resize_chebyshev(data: np.ndarray, m: int, axis: int = 0) -> np.ndarray:
    """Truncate or zero-pad a Chebyshev axis."""
    old = data.shape[axis]
    if old == m:
        return data
    shape = list(data.shape)
    shape[axis] = m
    out = np.zeros(shape, dtype=complex)
    idx = [slice(None)] * data.ndim
    idx[axis] = slice(0, min(old, m))
    out[tuple(idx)] = data[tuple(idx)]
    return out


@dataclass(frozen=True, eq=False)
class CffTensor:
    """Chebyshev-Fourier-Fourier coefficients alpha[i, j + n/2, k + p/2].

    The represented function is
        f(r, lam, th) = sum_ijk alpha_ijk T_i(r) exp(1j*j*lam) exp(1j*k*th).
    """
    data: np.ndarray

    def __post_init__(self):
        data = np.array(self.data, dtype=complex)
        if data.ndim != 3:
            raise ShapeMismatchError(f"Coefficient tensor must be 3-D, got shape {data.shape}")
        m, n, p = data.shape
        if m < 1 or n < 2 or p < 2 or n % 2 or p % 2:
            raise InvalidSizeError(f"Invalid tensor size {data.shape}")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @property
    def shape(self) -> Tuple[int, int, int]:
        return self.data.shape

    @property
    def m(self) -> int:
        return self.data.shape[0]

    @property
    def n(self) -> int:
        return self.data.shape[1]

    @property
    def p(self) -> int:
        return self.data.shape[2]

    @classmethod
    def zeros(cls, m: int = 1, n: int = 2, p: int = 2) -> "CffTensor":
        return cls(np.zeros((m, n, p), dtype=complex))

    @classmethod
    def constant(cls, value: Number) -> "CffTensor":
        data = np.zeros((1, 2, 2), dtype=complex)
        data[0, 1, 1] = value
        return cls(data)

    def coefficient(self, i: int, j: int, k: int) -> complex:
        """Coefficient of T_i(r) exp(1j*j*lam) exp(1j*k*th); zero outside the tensor."""
        if not (0 <= i < self.m and -self.n // 2 <= j < self.n // 2 and -self.p // 2 <= k < self.p // 2):
            return 0j
        return complex(self.data[i, j + self.n // 2, k + self.p // 2])

    def resized(self, m: int, n: int, p: int) -> "CffTensor":
        """Return the tensor truncated or zero-padded to (m, n, p)."""
        data = resize_chebyshev(self.data, m, axis=0)
        data = resize_fourier(data, n, axis=1)
        data = resize_fourier(data, p, axis=2)
        return CffTensor(data)


def common_shape(*shapes: Tuple[int, int, int]) -> Tuple[int, int, int]:
    """Elementwise maximum of tensor shapes."""
    return tuple(int(max(s[d] for s in shapes)) for d in range(3))


@dataclass(frozen=True, eq=False)
class BallScalar:
    """A scalar function on the unit ball in CFF form.

    Arithmetic, evaluation and integration are available as operators and
    methods; they delegate to the calculus module.
    """
    coeffs: CffTensor
    resolved: bool = True
    vscale: float = 0.0
    real: bool = True
    report: object = field(default=None, compare=False, repr=False)

    @property
    def sizes(self) -> Tuple[int, int, int]:
        return self.coeffs.shape

    @property
    def m(self) -> int:
        return self.coeffs.m

    @property
    def n(self) -> int:
        return self.coeffs.n

    @property
    def p(self) -> int:
        return self.coeffs.p

    def __call__(self, a, b, c, coords: str = "cart"):
        from .calculus import evaluate
        return evaluate(self, a, b, c, coords=coords)

    def __neg__(self) -> "BallScalar":
        return BallScalar(CffTensor(-self.coeffs.data), self.resolved, self.vscale, self.real)

    def __add__(self, other) -> "BallScalar":
        from .calculus import add
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other) -> "BallScalar":
        from .calculus import add
        return add(self, -other)

    def __rsub__(self, other) -> "BallScalar":
        from .calculus import add
        return add(-self, other)

    def __mul__(self, other) -> "BallScalar":
        from .calculus import mul
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "BallScalar":
        if isinstance(other, BallScalar):
            from .calculus import divide
            return divide(self, other)
        from .calculus import mul
        return mul(self, 1.0 / other)

    def __rtruediv__(self, other) -> "BallScalar":
        from .calculus import divide
        from .construct import construct
        return divide(construct(other), self)

    def real_part(self) -> "BallScalar":
        from .calculus import real_part
        return real_part(self)

    def imag_part(self) -> "BallScalar":
        from .calculus import imag_part
        return imag_part(self)

    def conj(self) -> "BallScalar":
        from .calculus import conj
        return conj(self)

    def sum3(self) -> complex:
        from .calculus import sum3
        return sum3(self)

    def norm(self) -> float:
        from .calculus import norm
        return norm(self)

    def max_abs(self) -> float:
        from .calculus import max_abs
        return max_abs(self)

    def diff(self, axis: str) -> "BallScalar":
        from .calculus import diff_cart
        return diff_cart(self, axis)
