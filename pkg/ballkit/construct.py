"""Adaptive construction of BallScalar objects.

A function is sampled on the half-domain grid, doubled, and transformed.
Each variable is refined independently (radial 17 -> 33 -> 65 ..., angular
16 -> 32 -> 64 ...) until the maximum absolute coefficients along that
variable fall below tolerance * vscale. The result is trimmed to the chop
indices.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Tuple, Union

import numpy as np

from . import config
from .errors import UnresolvedFunctionError
from .grid import SampleGrid, check_sizes, double_samples, extract_half, make_grid
from .tensor import BallScalar, CffTensor, Number
from .transforms import coeffs2vals, vals2coeffs

logger = logging.getLogger(__name__)

Sampler = Callable[[SampleGrid], np.ndarray]

# Smallest sizes the refinement loop starts from
MIN_LOOP_SIZES = (5, 8, 8)


@dataclass(frozen=True, eq=False)
class ResolutionReport:
    """Coefficient envelopes and chop decisions for one tensor."""
    cols: np.ndarray
    rows: np.ndarray
    tubes: np.ndarray
    chop: Tuple[int, int, int]
    trimmed: Tuple[int, int, int]
    resolved: Tuple[bool, bool, bool]
    threshold: float

    @property
    def converged(self) -> bool:
        return all(self.resolved)


def _threshold(vscale: float, tol: Optional[float]) -> float:
    if tol is None:
        tol = config.get_chop_tolerance()
    # vscale 0 means the tolerance is absolute
    return tol * (vscale if vscale > 0 else 1.0)


def _last_above(envelope: np.ndarray, threshold: float) -> int:
    above = np.nonzero(envelope > threshold)[0]
    return int(above[-1]) if above.size else -1


def _fold(envelope: np.ndarray) -> np.ndarray:
    """Fold a Fourier envelope onto |mode| = 0..n/2."""
    n = envelope.size
    folded = np.zeros(n // 2 + 1)
    folded[: n // 2] = envelope[n // 2:]
    folded[1:] = np.maximum(folded[1:], envelope[n // 2 - 1::-1])
    return folded


def resolution_report(tensor: CffTensor, vscale: float, tol: Optional[float] = None) -> ResolutionReport:
    """Measure how well a tensor resolves its function.

    Args:
        tensor: Coefficient tensor to inspect
        vscale: Scale used for the relative tolerance
        tol: Relative chop tolerance, defaults to the configured one

    Returns:
        ResolutionReport with per-variable envelopes, chop indices
        (last index above threshold, radial index or folded |mode|),
        trimmed sizes and per-variable resolution flags
    """
    magnitude = np.abs(tensor.data)
    cols = magnitude.max(axis=(1, 2))
    rows = magnitude.max(axis=(0, 2))
    tubes = magnitude.max(axis=(0, 1))
    threshold = _threshold(vscale, tol)

    c_r = _last_above(cols, threshold)
    c_l = _last_above(_fold(rows), threshold)
    c_t = _last_above(_fold(tubes), threshold)
    m, n, p = tensor.shape

    trimmed = (max(c_r + 1, 1), max(2 * (c_l + 1), 2), max(2 * (c_t + 1), 2))
    # The Nyquist mode can alias to zero and one parity can vanish identically,
    # so a Fourier tail counts only with a non-Nyquist mode of each parity below.
    resolved = (c_r < m - 2, c_l < n // 2 - 2, c_t < p // 2 - 2)
    return ResolutionReport(
        cols=cols, rows=rows, tubes=tubes, chop=(c_r, c_l, c_t),
        trimmed=trimmed, resolved=resolved, threshold=threshold,
    )


def _is_real(values: np.ndarray) -> bool:
    return not np.iscomplexobj(values) or not np.any(values.imag)


def adaptive(
    sampler: Sampler,
    initial: Optional[Tuple[int, int, int]] = None,
    tol: Optional[float] = None,
    real: Optional[bool] = None,
) -> BallScalar:
    """Run the refinement loop for a half-grid sampler.

    Args:
        sampler: Returns samples of the function on a SampleGrid
        initial: Starting sizes, defaults to the configured ones
        tol: Relative chop tolerance
        real: Force the real flag instead of detecting it from samples

    Raises:
        UnresolvedFunctionError: if a size cap is reached first
    """
    m, n, p = initial if initial is not None else config.get_initial_sizes()
    m = max(m, MIN_LOOP_SIZES[0])
    n = max(n + n % 2, MIN_LOOP_SIZES[1])
    p = max(p + p % 2, MIN_LOOP_SIZES[2])
    max_radial, max_angular = config.get_size_caps()

    while True:
        grid = make_grid(m, n, p)
        half = np.broadcast_to(np.asarray(sampler(grid), dtype=complex), grid.shape)
        values = double_samples(half, m, n, p)
        tensor = vals2coeffs(values)
        vscale = float(np.max(np.abs(values)))
        report = resolution_report(tensor, vscale, tol)
        logger.debug(f"Sampled at {m}x{n}x{p}: chop={report.chop}, resolved={report.resolved}")

        if report.converged:
            break

        grow = (not report.resolved[0], not report.resolved[1], not report.resolved[2])
        if (grow[0] and 2 * m - 1 > max_radial) or (grow[1] and 2 * n > max_angular) or (
            grow[2] and 2 * p > max_angular
        ):
            raise UnresolvedFunctionError(
                f"Function not resolved at {m}x{n}x{p} (caps {max_radial}, {max_angular})", report
            )
        m = 2 * m - 1 if grow[0] else m
        n = 2 * n if grow[1] else n
        p = 2 * p if grow[2] else p

    is_real = _is_real(half) if real is None else real
    result = BallScalar(tensor.resized(*report.trimmed), True, vscale, is_real, report)
    logger.info(f"Resolved function at {result.sizes} (vscale={vscale:.3e})")
    return result


def _evaluate(f, coords: str) -> Sampler:
    def sample(grid: SampleGrid) -> np.ndarray:
        if coords == "sph":
            return f(*grid.mesh())
        return f(*grid.cartesian())
    return sample


def construct(
    f: Union[Callable, Number],
    coords: str = "cart",
    sizes: Optional[Tuple[int, int, int]] = None,
    tol: Optional[float] = None,
) -> BallScalar:
    """Construct a BallScalar from a vectorized point evaluator.

    Args:
        f: Callable f(x, y, z) (coords="cart") or f(r, lam, th)
           (coords="sph") accepting numpy arrays, or a constant
        coords: "cart" or "sph"
        sizes: Fixed (m, n, p); disables adaptivity and trimming
        tol: Relative chop tolerance

    Returns:
        BallScalar resolved to the chop tolerance
    """
    if coords not in ("cart", "sph"):
        raise ValueError(f"Unknown coordinate system: {coords}")
    if not callable(f):
        value = complex(f)
        return BallScalar(CffTensor.constant(value), True, abs(value), value.imag == 0)

    sampler = _evaluate(f, coords)
    if sizes is None:
        return adaptive(sampler, tol=tol)

    m, n, p = sizes
    check_sizes(m, n, p)
    grid = make_grid(m, n, p)
    half = np.broadcast_to(np.asarray(sampler(grid), dtype=complex), grid.shape)
    values = double_samples(half, m, n, p)
    tensor = vals2coeffs(values)
    vscale = float(np.max(np.abs(values)))
    report = resolution_report(tensor, vscale, tol)
    return BallScalar(tensor, report.converged, vscale, _is_real(half), report)


def simplify(
    tensor: CffTensor,
    real: bool = True,
    resolved: bool = True,
    tol: Optional[float] = None,
) -> BallScalar:
    """Trim a derived tensor to its chop indices and wrap it.

    Derived results cannot be resampled, so the resolution flag is
    inherited from the operands.
    """
    values = coeffs2vals(tensor)
    vscale = float(np.max(np.abs(values)))
    report = resolution_report(tensor, vscale, tol)
    return BallScalar(tensor.resized(*report.trimmed), resolved, vscale, real, report)


def is_bmc(tensor: CffTensor, tol: float = 1e-10) -> bool:
    """Check the doubled-domain symmetries of a coefficient tensor.

    Verifies that the grid values are copies of their half-domain sources,
    that the function is constant in lambda along theta = 0 and theta = pi,
    and constant over the sphere of radius 0.
    """
    values = coeffs2vals(tensor)
    m, n, p = tensor.shape
    vscale = float(np.max(np.abs(values)))
    threshold = tol * (vscale if vscale > 0 else 1.0)

    redoubled = double_samples(extract_half(values), m, n, p)
    if np.max(np.abs(redoubled - values)) > threshold:
        logger.debug("Block relations violated")
        return False

    north, south = pole_sums(tensor.data)
    if max(np.max(np.abs(north)), np.max(np.abs(south))) > threshold:
        return False
    return bool(np.max(np.abs(origin_sums(tensor.data))) <= threshold)


def _origin_weights(m: int) -> np.ndarray:
    """T_i(0): 1, 0, -1, 0, ..."""
    i = np.arange(m)
    return np.where(i % 2, 0.0, 1.0 - 2.0 * ((i // 2) % 2))


def pole_sums(data: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Values of the lambda modes j != 0 at th = 0 and th = pi, shape (m, n - 1).

    They vanish when the function is constant in lambda on the pole line.
    """
    m, n, p = data.shape
    signs = 1 - 2 * (np.arange(-p // 2, p // 2) % 2)
    off_axis = np.delete(np.arange(n), n // 2)
    return data.sum(axis=2)[:, off_axis], (data * signs).sum(axis=2)[:, off_axis]


def origin_sums(data: np.ndarray) -> np.ndarray:
    """Angular coefficients of f(0, lam, th) with the constant term zeroed."""
    m, n, p = data.shape
    origin = np.tensordot(_origin_weights(m), data, axes=(0, 0))
    origin[n // 2, p // 2] = 0.0
    return origin


def project_bmc(tensor: CffTensor) -> CffTensor:
    """Remove pole and origin violations left by truncation or rounding.

    For each radial index and lambda mode j != 0 the even-k part of the pole
    sums is removed from k = 0 and the odd-k part from k = +-1; then the
    origin sums are removed from the T_0 coefficients. Both corrections
    respect the block relations.
    """
    data = np.array(tensor.data)
    m, n, p = data.shape
    k0 = p // 2
    off_axis = np.delete(np.arange(n), n // 2)
    north, south = pole_sums(data)
    even, odd = 0.5 * (north + south), 0.5 * (north - south)
    data[:, off_axis, k0] -= even
    if p >= 4:
        data[:, off_axis, k0 + 1] -= 0.5 * odd
        data[:, off_axis, k0 - 1] -= 0.5 * odd
    else:
        data[:, off_axis, k0 - 1] -= odd
    data[0] -= origin_sums(data)
    return CffTensor(data)
