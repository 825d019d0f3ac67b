"""Self-inclusive rank counts."""

from dataclasses import dataclass

import numpy as np

from ..errors import InputError


@dataclass(frozen=True, eq=False)
class RankVector:
    """Per-index counts ``r[i] = #{l: v_l <= v_i}`` and ``l[i] = #{l: v_l >= v_i}``."""

    r: np.ndarray
    l: np.ndarray  # noqa: E741

    @property
    def n(self) -> int:
        return int(self.r.shape[0])


def _check_vector(values: np.ndarray) -> np.ndarray:
    values = np.asarray(values, dtype=float).reshape(-1)
    if values.size == 0:
        raise InputError("cannot rank an empty vector")
    if not np.all(np.isfinite(values)):
        raise InputError("cannot rank non-finite values")
    return values


def ranks(values: np.ndarray) -> RankVector:
    """Compute both rank counts in O(n log n) with ties counted self-inclusively."""
    values = _check_vector(values)
    ordered = np.sort(values)
    n = values.shape[0]
    r = np.searchsorted(ordered, values, side="right").astype(np.int64)
    l = n - np.searchsorted(ordered, values, side="left").astype(np.int64)  # noqa: E741
    return RankVector(r=r, l=l)
