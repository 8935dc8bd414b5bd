"""Exact alpha-invariants and Hilbert functions of fat point and fat line configurations."""

__version__ = "0.1.0"

from .errors import FatlinesError
from .exactalg import GF, QQ, Field, Matrix, nullspace, rank
from .symbolic import (
    Configuration,
    DegreeSlice,
    TypeReport,
    alpha,
    alpha_differences,
    degree_slice,
    hilbert,
    type_of,
    waldschmidt_estimates,
)

__all__ = [
    "__version__",
    "FatlinesError",
    "GF",
    "QQ",
    "Field",
    "Matrix",
    "nullspace",
    "rank",
    "Configuration",
    "DegreeSlice",
    "TypeReport",
    "alpha",
    "alpha_differences",
    "degree_slice",
    "hilbert",
    "type_of",
    "waldschmidt_estimates",
]
