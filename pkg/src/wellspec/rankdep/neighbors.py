"""Euclidean nearest neighbours with uniform random tie resolution."""

import logging
from dataclasses import dataclass
from typing import List

import numpy as np
from scipy.spatial import cKDTree

from ..errors import InputError
from ..tabular.rng import RngStream

logger = logging.getLogger(__name__)

EXACT_SCAN_LIMIT = 2000
SCAN_CHUNK = 256
TREE_NEIGHBORS = 8
RADIUS_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class NeighborMap:
    """``m[i]`` is the index of the nearest other row of ``i``."""

    m: np.ndarray
    tie_seed: RngStream
    tied_rows: int = 0

    @property
    def n(self) -> int:
        return int(self.m.shape[0])


def _as_matrix(x_u: np.ndarray) -> np.ndarray:
    x = np.asarray(x_u, dtype=float)
    if x.ndim == 1:
        x = x.reshape(-1, 1)
    if x.ndim != 2:
        raise InputError(f"conditioning matrix must be 2-D, got shape {x.shape}")
    if x.shape[0] < 2:
        raise InputError(f"nearest neighbours need at least 2 rows, got {x.shape[0]}")
    if not np.all(np.isfinite(x)):
        raise InputError("conditioning matrix contains non-finite values")
    return x


def _squared_distances(x: np.ndarray, i: int, candidates: np.ndarray) -> np.ndarray:
    diff = x[candidates] - x[i]
    return np.einsum("ij,ij->i", diff, diff)


def _minimizers_by_scan(x: np.ndarray) -> List[np.ndarray]:
    n = x.shape[0]
    result: List[np.ndarray] = []
    for start in range(0, n, SCAN_CHUNK):
        stop = min(start + SCAN_CHUNK, n)
        diff = x[start:stop, None, :] - x[None, :, :]
        dist = np.einsum("ijk,ijk->ij", diff, diff)
        dist[np.arange(stop - start), np.arange(start, stop)] = np.inf
        best = dist.min(axis=1)
        for row in range(stop - start):
            result.append(np.flatnonzero(dist[row] == best[row]))
    return result


def _minimizers_by_tree(x: np.ndarray) -> List[np.ndarray]:
    n = x.shape[0]
    tree = cKDTree(x)
    k = min(n, TREE_NEIGHBORS)
    tree_dist, tree_idx = tree.query(x, k=k)
    result: List[np.ndarray] = []
    for i in range(n):
        candidates = tree_idx[i][tree_idx[i] != i]
        sq = _squared_distances(x, i, candidates)
        best = sq.min()
        if k < n and tree_dist[i, -1] <= np.sqrt(best) * (1 + RADIUS_SLACK):
            # ties may extend beyond the k returned points
            radius = np.sqrt(best) * (1 + RADIUS_SLACK) + RADIUS_SLACK
            candidates = np.asarray(tree.query_ball_point(x[i], r=radius), dtype=np.int64)
            candidates = candidates[candidates != i]
            sq = _squared_distances(x, i, candidates)
            best = sq.min()
        result.append(np.sort(candidates[sq == best]))
    return result


def nearest_neighbors(x_u: np.ndarray, rng: RngStream) -> NeighborMap:
    """Nearest neighbour of every row, excluding the row itself.

    Exact distance ties, duplicate rows included, are broken by a uniform draw
    among all minimizers; rows are visited in index order so the draws are
    reproducible from ``rng``.
    """
    x = _as_matrix(x_u)
    n = x.shape[0]
    minimizers = _minimizers_by_scan(x) if n < EXACT_SCAN_LIMIT else _minimizers_by_tree(x)

    generator = rng.generator()
    m = np.empty(n, dtype=np.int64)
    tied = 0
    for i, options in enumerate(minimizers):
        if options.shape[0] == 1:
            m[i] = options[0]
        else:
            tied += 1
            m[i] = options[generator.integers(options.shape[0])]
    if tied:
        logger.debug(f"Resolved nearest-neighbour ties on {tied} of {n} rows")
    m.flags.writeable = False
    return NeighborMap(m=m, tie_seed=rng, tied_rows=tied)
