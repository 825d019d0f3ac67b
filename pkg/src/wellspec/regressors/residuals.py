"""Residualization for additive and location-scale noise models."""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..config import Mode, RegressorSpec
from ..errors import InputError
from .base import FittedModel, as_design
from .registry import fit

logger = logging.getLogger(__name__)

DEFAULT_BIG = 1e6


@dataclass(frozen=True, eq=False)
class Residuals:
    eps_hat: np.ndarray
    mode: Mode
    fallback_count: int = 0


def _check_rows(x: np.ndarray, y: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    x = as_design(x)
    y = np.asarray(y, dtype=float).reshape(-1)
    if x.shape[0] != y.shape[0]:
        raise InputError(f"design has {x.shape[0]} rows, target has {y.shape[0]}")
    return x, y


def residualize_anm(model: FittedModel, x: np.ndarray, y: np.ndarray) -> Residuals:
    """``y - f(x)``."""
    x, y = _check_rows(x, y)
    return Residuals(eps_hat=y - model.predict(x), mode=Mode.ANM)


def fit_moments(
    spec: RegressorSpec,
    x_train: np.ndarray,
    y_train: np.ndarray,
    x_valid: Optional[np.ndarray] = None,
    y_valid: Optional[np.ndarray] = None,
) -> Tuple[FittedModel, FittedModel]:
    """Fit E[Y|X] and E[Y^2|X] with the same backend; no positivity repair on the second."""
    y_train = np.asarray(y_train, dtype=float)
    y_valid_sq = None if y_valid is None else np.asarray(y_valid, dtype=float) ** 2
    f1 = fit(spec, x_train, y_train, x_valid, y_valid)
    f2 = fit(spec, x_train, y_train**2, x_valid, y_valid_sq)
    return f1, f2


def residualize_lsnm(
    f1: FittedModel,
    f2: FittedModel,
    x: np.ndarray,
    y: np.ndarray,
    big: float = DEFAULT_BIG,
) -> Residuals:
    """``(y - f1) / sqrt(f2 - f1^2)`` where the implied variance is positive.

    Other rows, and rows whose quotient is not finite, get ``+-big`` with the
    sign of ``y - f1`` (zero counts as positive).
    """
    if big <= 0:
        raise InputError(f"big must be positive, got {big}")
    x, y = _check_rows(x, y)
    m1 = f1.predict(x)
    m2 = f2.predict(x)
    centered = y - m1
    variance = m2 - m1**2

    eps = np.empty_like(centered)
    positive = variance > 0
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        eps[positive] = centered[positive] / np.sqrt(variance[positive])
    fallback = ~positive | ~np.isfinite(eps)
    eps[fallback] = np.where(centered[fallback] < 0, -big, big)

    count = int(fallback.sum())
    if count:
        logger.warning(f"Variance estimate non-positive on {count} of {y.shape[0]} rows, using +-{big:g}")
    return Residuals(eps_hat=eps, mode=Mode.LSNM, fallback_count=count)


@dataclass(frozen=True, eq=False)
class ResidualModel:
    """Fitted location (and, for LSNM, second-moment) models of one mode."""

    mode: Mode
    f1: FittedModel
    f2: Optional[FittedModel] = None

    @property
    def rounds_used(self) -> int:
        return self.f1.metadata.rounds_used

    def residualize(self, x: np.ndarray, y: np.ndarray, big: float = DEFAULT_BIG) -> Residuals:
        if self.mode is Mode.LSNM:
            assert self.f2 is not None
            return residualize_lsnm(self.f1, self.f2, x, y, big)
        return residualize_anm(self.f1, x, y)


def fit_residual_model(
    spec: RegressorSpec,
    mode: Mode,
    x_train: np.ndarray,
    y_train: np.ndarray,
    x_valid: Optional[np.ndarray] = None,
    y_valid: Optional[np.ndarray] = None,
) -> ResidualModel:
    """Fit what ``mode`` needs to residualize new rows."""
    mode = Mode(mode)
    if mode is Mode.LSNM:
        f1, f2 = fit_moments(spec, x_train, y_train, x_valid, y_valid)
        return ResidualModel(mode=mode, f1=f1, f2=f2)
    return ResidualModel(mode=mode, f1=fit(spec, x_train, y_train, x_valid, y_valid))
