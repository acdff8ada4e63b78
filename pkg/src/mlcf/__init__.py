"""Continued fractions, matrix products and recurrences with multiple limits."""

from .cf_core import CFSpec, ConvergentTable, ProjectivePoint, approximants, value_at
from .roots import RootOfUnity
from .sequences import PerturbationSeq

__version__ = "0.1.0"

__all__ = [
    "CFSpec",
    "ConvergentTable",
    "ProjectivePoint",
    "PerturbationSeq",
    "RootOfUnity",
    "approximants",
    "value_at",
]
