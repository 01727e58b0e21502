"""Invariant Einstein metrics on the C-spaces SU(l+m+n)/SU(l) x SU(m) x SU(n)."""

from .core import InvariantMetric, SpaceParams, make_params
from .solver import SolveOptions, SolveReport, solve

__version__ = "0.1.0"

__all__ = ["InvariantMetric", "SpaceParams", "make_params", "SolveOptions",
           "SolveReport", "solve"]
