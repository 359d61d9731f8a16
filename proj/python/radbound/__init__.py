"""Norm-based Rademacher complexity bounds for ReLU networks."""

from ._core import *  # noqa: F401,F403
from ._core import (
    ConvergenceError,
    DegenerateBudgetError,
    Error,
    FormatError,
    ModeError,
    NumericError,
    ShapeError,
    StructuralError,
)

__version__ = "0.1.0"
