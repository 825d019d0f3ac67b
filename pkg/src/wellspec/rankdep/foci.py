"""Greedy forward selection maximizing the CODEC numerator."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import InputError
from ..tabular.rng import RngStream
from .codec import codec_q, codec_s_unconditional, standardize_columns
from .neighbors import nearest_neighbors
from .ranks import RankVector, ranks

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FociSelection:
    """Ordered selected columns (0-based) and the Q_n value after each step."""

    selected: Tuple[int, ...]
    q_path: Tuple[Fraction, ...]
    undefined: bool = False

    def as_set(self) -> frozenset:
        return frozenset(self.selected)


def set_stream(rng: RngStream, columns: Sequence[int]) -> RngStream:
    """Tie stream of a candidate set; depends on the set only, not on the step."""
    return rng.child(*sorted(columns))


def candidate_q(
    y_ranks: RankVector, x: np.ndarray, columns: Sequence[int], rng: RngStream
) -> Fraction:
    nn = nearest_neighbors(x[:, sorted(columns)], set_stream(rng, columns))
    return codec_q(y_ranks, nn)


def foci_select(
    y: np.ndarray,
    x: np.ndarray,
    rng: RngStream,
    standardize: bool = False,
    max_size: Optional[int] = None,
) -> FociSelection:
    """Forward stepwise selection of a Markov-blanket estimate of ``y`` among the columns of ``x``.

    At each step the column whose addition maximizes Q_n(y, X_S) is added; the
    lowest index wins ties. Selection stops when the first step's best Q_n is
    not positive, when the best candidate does not improve on the current set,
    or when every column is selected. Maximizing Q_n is equivalent to
    maximizing the unconditional coefficient, whose normalizer does not depend
    on the predictors.
    """
    y = np.asarray(y, dtype=float).reshape(-1)
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x.reshape(-1, 1)
    n, p = x.shape
    if n != y.shape[0]:
        raise InputError(f"response has {y.shape[0]} rows, predictors have {n}")
    if n < 2 or p < 1:
        raise InputError(f"selection needs n >= 2 and p >= 1, got n={n}, p={p}")
    if standardize:
        x = standardize_columns(x)

    y_ranks = ranks(y)
    if codec_s_unconditional(y_ranks) == 0:
        logger.warning("Constant response: dependence undefined, selecting nothing")
        return FociSelection(selected=(), q_path=(), undefined=True)

    limit = p if max_size is None else min(p, max_size)
    selected: List[int] = []
    path: List[Fraction] = []
    current = Fraction(0)

    while len(selected) < limit:
        best_j = -1
        best_q: Optional[Fraction] = None
        for j in range(p):
            if j in selected:
                continue
            q = candidate_q(y_ranks, x, selected + [j], rng)
            if best_q is None or q > best_q:
                best_j, best_q = j, q
        assert best_q is not None
        logger.debug(f"Selection step {len(selected) + 1}: best column {best_j}, Q_n={float(best_q):.6g}")
        if best_q <= current:
            break
        selected.append(best_j)
        path.append(best_q)
        current = best_q

    return FociSelection(selected=tuple(selected), q_path=tuple(path))
