"""Exact Ward (h-) differential calculus on truncated formal power series."""

from .errors import WardError
from .kernels import BACKEND
from .operators import HSeries, SeriesOperator, d_h, i_h, op_series_apply
from .series import ABOVE_TRUNC, Series

__all__ = [
    "ABOVE_TRUNC",
    "BACKEND",
    "HSeries",
    "Series",
    "SeriesOperator",
    "WardError",
    "d_h",
    "i_h",
    "op_series_apply",
]

__version__ = "0.1.0"
