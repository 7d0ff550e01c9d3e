"""Binary coefficient files (.bfn).

Layout, all little-endian:
    4 bytes   magic b"BFN1"
    3 uint32  sizes m, n, p
    1 byte    coordinate convention
    m*n*p     complex128 coefficients, (i, j, k) at offset i + m*(j + n*k)
"""

import logging
import os
import struct
from pathlib import Path
from typing import List, Sequence, Union

import numpy as np

from .errors import FormatError
from .tensor import BallScalar, CffTensor
from .transforms import coeffs2vals

logger = logging.getLogger(__name__)

MAGIC = b"BFN1"
HEADER = struct.Struct("<4s3IB")

# x = r cos(lam) sin(th), y = r sin(lam) sin(th), z = r cos(th)
CONVENTION = 1

# Largest coefficient count accepted on load
MAX_COEFFICIENTS = 2**31

PathLike = Union[str, os.PathLike]


def file_size(m: int, n: int, p: int) -> int:
    """Expected size in bytes of a file holding an (m, n, p) tensor."""
    return HEADER.size + 16 * m * n * p


def to_bytes(f: BallScalar) -> bytes:
    m, n, p = f.sizes
    body = np.asarray(f.coeffs.data, dtype="<c16").ravel(order="F").tobytes()
    return HEADER.pack(MAGIC, m, n, p, CONVENTION) + body


def from_bytes(raw: bytes) -> BallScalar:
    """Decode a coefficient file.

    Raises:
        FormatError: bad magic, bad sizes, unknown convention or wrong length
    """
    if len(raw) < HEADER.size:
        raise FormatError(f"File too short for header ({len(raw)} bytes)")
    magic, m, n, p, convention = HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise FormatError(f"Bad magic {magic!r}")
    if convention != CONVENTION:
        raise FormatError(f"Unknown coordinate convention {convention}")
    if m < 1 or n < 2 or p < 2 or n % 2 or p % 2:
        raise FormatError(f"Invalid sizes {m}x{n}x{p}")
    if m * n * p > MAX_COEFFICIENTS:
        raise FormatError(f"Sizes {m}x{n}x{p} overflow the coefficient limit")
    if len(raw) != file_size(m, n, p):
        raise FormatError(f"Expected {file_size(m, n, p)} bytes for {m}x{n}x{p}, got {len(raw)}")

    data = np.frombuffer(raw, dtype="<c16", offset=HEADER.size).reshape((m, n, p), order="F")
    tensor = CffTensor(data.astype(complex))
    values = coeffs2vals(tensor)
    vscale = float(np.max(np.abs(values)))
    real = float(np.max(np.abs(values.imag))) <= 1e-13 * (vscale if vscale > 0 else 1.0)
    return BallScalar(tensor, True, vscale, real)


def save(f: BallScalar, path: PathLike) -> Path:
    """Write f to path; parent directories are created."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as fh:
        fh.write(to_bytes(f))
    logger.debug(f"Saved {f.sizes} coefficients to {path}")
    return path


def load(path: PathLike) -> BallScalar:
    with open(path, "rb") as fh:
        return from_bytes(fh.read())


def save_series(functions: Sequence[BallScalar], directory: PathLike, prefix: str) -> List[Path]:
    """Save numbered snapshots prefix_0000.bfn, prefix_0001.bfn, ... in directory."""
    directory = Path(directory)
    return [save(f, directory / f"{prefix}_{i:04d}.bfn") for i, f in enumerate(functions)]
