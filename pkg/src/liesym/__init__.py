"""Lie-symmetry analysis of polynomial ODEs in exact rational arithmetic."""

from .poly import Poly, VectorField, arith, compose, determinant, evaluate, jacobian, partial
from .lie import (
    TruncatedSeries,
    adjoint_series,
    check_solution_preserving,
    divergence,
    lie_bracket,
    lie_derivative,
    lie_series_transport,
)
from .toral import DiagonalAction

__all__ = [
    "DiagonalAction",
    "Poly",
    "TruncatedSeries",
    "VectorField",
    "adjoint_series",
    "arith",
    "check_solution_preserving",
    "compose",
    "determinant",
    "divergence",
    "evaluate",
    "jacobian",
    "lie_bracket",
    "lie_derivative",
    "lie_series_transport",
    "partial",
]

__version__ = "0.1.0"
