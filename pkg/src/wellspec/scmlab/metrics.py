"""Evaluation metrics for simulations and interventional checks."""

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from ..errors import InputError, UndefinedStatisticError
from ..regressors.base import FittedModel
from ..tabular.dataset import Dataset
from .truth import GroundTruth

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FprTpr:
    """Empirical rates with their numerators and denominators.

    A rate is ``None`` when its denominator class is empty.
    """

    fpr: Optional[float]
    tpr: Optional[float]
    fp: int
    negatives: int
    tp: int
    positives: int


def _selected(report: object) -> Iterable[int]:
    return getattr(report, "w_hat", report)  # type: ignore[return-value]


def fpr_tpr(
    pairs: Sequence[Tuple[object, GroundTruth]], exclude_globally_specified: bool = False
) -> FprTpr:
    """Pool ``(report, truth)`` pairs over all runs and variables.

    A report is anything with a ``w_hat`` of 1-based positions, or such a
    collection itself. With ``exclude_globally_specified`` runs whose truth is
    globally well specified do not count.
    """
    if not pairs:
        raise InputError("fpr_tpr needs at least one (report, truth) pair")
    fp = negatives = tp = positives = 0
    for report, truth in pairs:
        if exclude_globally_specified and truth.global_ok:
            continue
        w_hat = set(_selected(report))
        w_true = truth.as_set()
        for j in range(1, truth.p + 1):
            if j in w_true:
                positives += 1
                tp += j in w_hat
            else:
                negatives += 1
                fp += j in w_hat
    if negatives == 0:
        logger.warning("No negatives among the pairs; FPR undefined")
    if positives == 0:
        logger.warning("No positives among the pairs; TPR undefined")
    return FprTpr(
        fpr=fp / negatives if negatives else None,
        tpr=tp / positives if positives else None,
        fp=fp,
        negatives=negatives,
        tp=tp,
        positives=positives,
    )


def amp(eps_true: np.ndarray, eps_hat: np.ndarray) -> float:
    """Average misposition of ``eps_hat`` against ``eps_true``.

    ``(1/n^2) * sum_i |#{l: eps_l < eps_i} - #{l: hat_l < hat_i}|``, which lies
    in [0, 1) and only depends on the two rank profiles.
    """
    eps_true = np.asarray(eps_true, dtype=float).ravel()
    eps_hat = np.asarray(eps_hat, dtype=float).ravel()
    if eps_true.shape != eps_hat.shape:
        raise InputError(f"length mismatch: {eps_true.shape[0]} vs {eps_hat.shape[0]}")
    n = eps_true.shape[0]
    if n == 0:
        raise InputError("amp needs at least one residual")
    below_true = np.searchsorted(np.sort(eps_true), eps_true, side="left")
    below_hat = np.searchsorted(np.sort(eps_hat), eps_hat, side="left")
    return int(np.abs(below_true - below_hat).sum()) / n**2


def relative_bias(model: FittedModel, d_interv: Dataset, d_obs: Dataset) -> float:
    """Mean prediction error on interventional data relative to the observational mean."""
    if d_interv.predictor_names != d_obs.predictor_names:
        raise InputError(
            f"predictor schemas differ: {list(d_interv.predictor_names)} vs {list(d_obs.predictor_names)}"
        )
    obs_mean = float(np.mean(d_obs.y))
    if obs_mean == 0.0:
        raise UndefinedStatisticError("observational mean of the target is zero")
    error = d_interv.y - model.predict(d_interv.x)
    return abs(float(np.mean(error))) / abs(obs_mean)
