"""Pluggable regression and residualization."""

from .base import FittedModel, ModelMetadata, RegressorBackend
from .registry import RegressorRegistry, create_default_registry, fit, get_registry
from .residuals import (
    ResidualModel,
    Residuals,
    fit_moments,
    fit_residual_model,
    residualize_anm,
    residualize_lsnm,
)

__all__ = [
    "FittedModel",
    "ModelMetadata",
    "RegressorBackend",
    "RegressorRegistry",
    "create_default_registry",
    "fit",
    "get_registry",
    "ResidualModel",
    "Residuals",
    "fit_moments",
    "fit_residual_model",
    "residualize_anm",
    "residualize_lsnm",
]
