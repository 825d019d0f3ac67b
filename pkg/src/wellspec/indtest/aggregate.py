"""Quantile aggregation of p-values over multiple splits."""

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from ..errors import InputError

DEFAULT_GAMMA_MIN = 0.05
_CEIL_SLACK = 1e-9


@dataclass(frozen=True)
class AggregatedPValue:
    p0: float
    gamma_min: float
    per_split: Tuple[float, ...]
    gamma_star: float


def quantile_ratio(sorted_p: np.ndarray, gamma_value: float) -> float:
    """min(1, empirical gamma-quantile of p/gamma) with the inverted-CDF quantile."""
    count = sorted_p.shape[0]
    k = max(1, math.ceil(gamma_value * count - _CEIL_SLACK))
    return min(1.0, float(sorted_p[k - 1]) / gamma_value)


def aggregate_pvalues(
    per_split: Sequence[float], gamma_min: float = DEFAULT_GAMMA_MIN
) -> AggregatedPValue:
    """Combine split p-values with the adaptive-gamma rule.

    ``Q(gamma)`` is a step function in gamma that decreases between the
    quantile jump points ``k / K``; its infimum over ``[gamma_min, 1]`` is
    attained at one of those points or at ``gamma_min``.
    """
    if not 0 < gamma_min < 1:
        raise InputError(f"gamma_min must lie in (0, 1), got {gamma_min}")
    values = np.asarray(per_split, dtype=float)
    if values.size == 0:
        raise InputError("no p-values to aggregate")
    if not np.all((values > 0) & (values <= 1)):
        raise InputError("p-values must lie in (0, 1]")

    sorted_p = np.sort(values)
    count = sorted_p.shape[0]
    first = max(1, math.ceil(gamma_min * count - _CEIL_SLACK))
    candidates = [gamma_min] + [k / count for k in range(first, count + 1)]
    candidates = [g for g in candidates if g >= gamma_min]

    best_gamma = candidates[0]
    best = quantile_ratio(sorted_p, best_gamma)
    for g in candidates[1:]:
        value = quantile_ratio(sorted_p, g)
        if value < best:
            best, best_gamma = value, g

    p0 = min(1.0, (1.0 - math.log(gamma_min)) * best)
    return AggregatedPValue(
        p0=p0, gamma_min=gamma_min, per_split=tuple(float(v) for v in values), gamma_star=best_gamma
    )
