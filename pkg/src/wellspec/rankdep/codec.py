"""The CODEC conditional dependence coefficient in exact rational arithmetic.

With ``R_i``/``L_i`` the self-inclusive rank counts of the response and
``M(i)`` the nearest neighbour of row ``i`` in the conditioning space:

    Q_n = (n * sum_i min(R_i, R_M(i)) - sum_i L_i^2) / n^3
    S_n = sum_i L_i (n - L_i) / n^3                      (unconditional)
    S_n = sum_i (R_i - min(R_i, R_N(i))) / n^2           (given a baseline, N its neighbours)

All sums are integers, so the statistics are kept as ``Fraction``s.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Optional

import numpy as np

from ..errors import InputError
from ..tabular.rng import RngStream
from .neighbors import NeighborMap, nearest_neighbors
from .ranks import RankVector, ranks

logger = logging.getLogger(__name__)

UNCONDITIONAL = "unconditional"
CONDITIONAL = "conditional"


@dataclass(frozen=True)
class DependenceStat:
    """The triple (Q_n, S_n, T_n); ``t_n`` is None when S_n = 0."""

    q_n: Fraction
    s_n: Fraction
    t_n: Optional[Fraction]
    normalizer: str = UNCONDITIONAL

    @property
    def undefined(self) -> bool:
        return self.t_n is None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "q_n": float(self.q_n),
            "s_n": float(self.s_n),
            "t_n": None if self.t_n is None else float(self.t_n),
            "q_n_exact": str(self.q_n),
            "s_n_exact": str(self.s_n),
            "t_n_exact": None if self.t_n is None else str(self.t_n),
            "normalizer": self.normalizer,
            "undefined": self.undefined,
        }


def _check_sizes(y_ranks: RankVector, nn: NeighborMap) -> None:
    if y_ranks.n != nn.n:
        raise InputError(f"rank vector has {y_ranks.n} entries, neighbour map has {nn.n}")


def _sum_min(y_ranks: RankVector, nn: NeighborMap) -> int:
    return int(np.minimum(y_ranks.r, y_ranks.r[nn.m]).sum())


def codec_q(y_ranks: RankVector, nn: NeighborMap) -> Fraction:
    """Exact Q_n for the response ranks and a neighbour map on the same rows."""
    _check_sizes(y_ranks, nn)
    n = y_ranks.n
    sum_sq = int((y_ranks.l * y_ranks.l).sum())
    return Fraction(n * _sum_min(y_ranks, nn) - sum_sq, n**3)


def codec_s_conditional(y_ranks: RankVector, nn: NeighborMap) -> Fraction:
    """Exact conditional normalizer built from the baseline neighbour map."""
    _check_sizes(y_ranks, nn)
    n = y_ranks.n
    return Fraction(int(y_ranks.r.sum()) - _sum_min(y_ranks, nn), n**2)


def codec_s_unconditional(y_ranks: RankVector) -> Fraction:
    """Exact unconditional normalizer; closed form on distinct values."""
    n = y_ranks.n
    if n < 2:
        raise InputError(f"normalizer needs at least 2 values, got {n}")
    return Fraction(int((y_ranks.l * (n - y_ranks.l)).sum()), n**3)


def standardize_columns(x: np.ndarray) -> np.ndarray:
    """Center and scale every column; constant columns are only centered."""
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x.reshape(-1, 1)
    scale = x.std(axis=0)
    scale[scale == 0] = 1.0
    return (x - x.mean(axis=0)) / scale


def codec_t(
    y: np.ndarray,
    x_u: np.ndarray,
    rng: RngStream,
    conditional_baseline: Optional[np.ndarray] = None,
    standardize: bool = False,
) -> DependenceStat:
    """Dependence of ``y`` on ``x_u``, optionally given ``conditional_baseline``.

    Without a baseline the unconditional normalizer is used. With one, the
    numerator compares neighbours in the joint space ``[baseline, x_u]`` with
    neighbours in the baseline alone. Baseline neighbours draw ties from
    ``rng.child(0)``, joint-space neighbours from ``rng.child(1)``.
    """
    y = np.asarray(y, dtype=float).reshape(-1)
    x = np.asarray(x_u, dtype=float)
    if x.ndim == 1:
        x = x.reshape(-1, 1)
    if x.shape[0] != y.shape[0]:
        raise InputError(f"response has {y.shape[0]} rows, predictors have {x.shape[0]}")
    if standardize:
        x = standardize_columns(x)

    y_ranks = ranks(y)
    if conditional_baseline is None:
        q = codec_q(y_ranks, nearest_neighbors(x, rng))
        s = codec_s_unconditional(y_ranks)
        normalizer = UNCONDITIONAL
    else:
        base = np.asarray(conditional_baseline, dtype=float)
        if base.ndim == 1:
            base = base.reshape(-1, 1)
        if base.shape[0] != y.shape[0]:
            raise InputError(f"response has {y.shape[0]} rows, baseline has {base.shape[0]}")
        if standardize:
            base = standardize_columns(base)
        nn_base = nearest_neighbors(base, rng.child(0))
        nn_joint = nearest_neighbors(np.column_stack([base, x]), rng.child(1))
        n = y_ranks.n
        q = Fraction(_sum_min(y_ranks, nn_joint) - _sum_min(y_ranks, nn_base), n**2)
        s = codec_s_conditional(y_ranks, nn_base)
        normalizer = CONDITIONAL

    if s == 0:
        logger.warning("Dependence coefficient undefined: normalizer is zero (constant response?)")
        return DependenceStat(q_n=q, s_n=s, t_n=None, normalizer=normalizer)
    return DependenceStat(q_n=q, s_n=s, t_n=q / s, normalizer=normalizer)
