"""Wellspec - detect causal well-specification of nonlinear noise models."""

__version__ = "0.1.0"
__author__ = "Wellspec Team"

from .config import Mode, RunConfig
from .procedures import WellSpecReport, alg3_multisplit

__all__ = ["Mode", "RunConfig", "WellSpecReport", "alg3_multisplit"]
