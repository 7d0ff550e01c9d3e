"""Exception types raised by Ballkit."""

from typing import Any, Optional


class BallkitError(Exception):
    """Base class for all Ballkit errors."""


class InvalidSizeError(BallkitError, ValueError):
    """A discretization size is out of range (e.g. an odd Fourier length)."""


class ShapeMismatchError(BallkitError, ValueError):
    """An array does not have the shape required by an operation."""


class DomainError(BallkitError, ValueError):
    """A point or argument lies outside the domain of an operation."""


class UnresolvedFunctionError(BallkitError):
    """Adaptive sampling reached the size cap before the coefficients decayed."""

    def __init__(self, message: str, report: Optional[Any] = None):
        super().__init__(message)
        self.report = report


class SolvabilityError(BallkitError):
    """The Neumann data and the right-hand side are not compatible."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class NumericalRankError(BallkitError):
    """A per-mode linear system is singular."""

    def __init__(self, message: str, mode: int):
        super().__init__(message)
        self.mode = mode


class NotDivergenceFreeError(BallkitError):
    """A vector field passed to the poloidal-toroidal decomposition has divergence."""

    def __init__(self, message: str, divergence: float):
        super().__init__(message)
        self.divergence = divergence


class FormatError(BallkitError):
    """A coefficient file is malformed."""


class ExprError(BallkitError):
    """Base class for expression parsing errors."""


class ExprSyntaxError(ExprError):
    """The expression text is not well formed."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownIdentifierError(ExprError):
    """The expression names a variable or function that does not exist."""


class ArityError(ExprError):
    """A function was called with the wrong number of arguments."""
