"""Tabular plot data: function values on planar slices and on the sphere."""

import logging
import sys
from pathlib import Path
from typing import List, Literal, Optional, TextIO, Tuple, Union

import numpy as np
from pydantic import BaseModel, field_validator, model_validator

from .errors import DomainError
from .tensor import BallScalar
from .vector import BallVector

logger = logging.getLogger(__name__)


class PlaneSpec(BaseModel):
    """A slice plane: axis = value for x, y or z, or the sphere r = 1."""
    axis: Literal["x", "y", "z", "r"]
    value: float

    @field_validator("value")
    @classmethod
    def value_in_range(cls, v: float) -> float:
        if abs(v) > 1.0:
            raise ValueError(f"Plane at {v} does not intersect the unit ball")
        return v

    @model_validator(mode="after")
    def sphere_only_at_one(self) -> "PlaneSpec":
        if self.axis == "r" and self.value != 1.0:
            raise ValueError("Only the sphere r=1 is supported")
        return self

    @property
    def labels(self) -> Tuple[str, str]:
        return {"x": ("y", "z"), "y": ("x", "z"), "z": ("x", "y"), "r": ("lam", "th")}[self.axis]


def parse_plane(text: str) -> PlaneSpec:
    """Parse 'z=0.5', 'x=-0.2', 'r=1' and the like.

    Raises:
        DomainError: if the text is malformed or the plane misses the ball
    """
    axis, sep, value = text.replace(" ", "").partition("=")
    try:
        if not sep:
            raise ValueError("expected axis=value")
        return PlaneSpec(axis=axis, value=float(value))
    except ValueError as e:
        raise DomainError(f"Invalid plane {text!r}: {e}")


def slice_points(plane: PlaneSpec, resolution: int) -> Tuple[np.ndarray, np.ndarray, Tuple[np.ndarray, ...], str]:
    """Sample coordinates on the plane, row-major, clipped to the closed ball.

    Returns:
        (c1, c2, point, coords) where point is the triple passed to the
        evaluator in the coordinate system coords
    """
    if plane.axis == "r":
        lam, th = np.meshgrid(
            np.linspace(-np.pi, np.pi, resolution), np.linspace(0.0, np.pi, resolution), indexing="ij"
        )
        lam, th = lam.ravel(), th.ravel()
        return lam, th, (np.ones_like(lam), lam, th), "sph"

    grid = np.linspace(-1.0, 1.0, resolution)
    a, b = np.meshgrid(grid, grid, indexing="ij")
    a, b = a.ravel(), b.ravel()
    inside = a**2 + b**2 + plane.value**2 <= 1.0
    a, b = a[inside], b[inside]
    c = np.full_like(a, plane.value)
    point = {"x": (c, a, b), "y": (a, c, b), "z": (a, b, c)}[plane.axis]
    return a, b, point, "cart"


def emit_slice(f: BallScalar, plane: PlaneSpec, resolution: int) -> Tuple[np.ndarray, List[str]]:
    """Records (coord1, coord2, value[, value_imag]) on a plane.

    Returns:
        (records, header) with one row per sample point
    """
    a, b, point, coords = slice_points(plane, resolution)
    values = f(*point, coords=coords)
    header = list(plane.labels)
    if np.iscomplexobj(values):
        logger.debug("Complex function: emitting real and imaginary columns")
        return np.column_stack([a, b, values.real, values.imag]), header + ["value_re", "value_im"]
    return np.column_stack([a, b, values]), header + ["value"]


def emit_vector_slice(v: BallVector, plane: PlaneSpec, resolution: int) -> Tuple[np.ndarray, List[str]]:
    """Quiver records (coord1, coord2, vx, vy, vz) on a plane."""
    a, b, point, coords = slice_points(plane, resolution)
    values = np.real(v(*point, coords=coords))
    return np.column_stack([a, b, values]), list(plane.labels) + ["vx", "vy", "vz"]


def write_csv(records: np.ndarray, header: List[str], out: Optional[Union[str, Path, TextIO]] = None) -> None:
    """Write records as CSV with one header row, to a path or stdout."""
    target = sys.stdout if out is None else out
    np.savetxt(target, records, fmt="%.15g", delimiter=",", header=",".join(header), comments="")
