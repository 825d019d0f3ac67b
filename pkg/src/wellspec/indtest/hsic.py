"""HSIC independence test between a residual vector and the predictors.

Gaussian kernels with median-heuristic bandwidths. The statistic is the
biased V-statistic ``trace(K_e H K_x H) / n^2``. Calibration is either by
permuting the residuals or by the gamma approximation of the null law.

Above ``EXACT_MAX_ROWS`` rows the permutation test works on random Fourier
features: with ``K ~ Z Z^T`` the statistic becomes
``||Z_e^T H Z_x||_F^2 / n^2`` and one permutation costs ``O(n r^2)``
instead of an ``n x n`` copy. The permutation test stays exact for the
approximate statistic.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from scipy.spatial.distance import pdist, squareform
from scipy.stats import gamma

from ..errors import InputError
from ..tabular.rng import RngStream

logger = logging.getLogger(__name__)

MIN_HSIC_ROWS = 4
MIN_PERMUTATIONS = 19
EXACT_MAX_ROWS = 1000
FOURIER_FEATURES = 32
BANDWIDTH_ROWS = 1000


class HsicMethod(str, Enum):
    PERMUTATION = "permutation"
    GAMMA = "gamma"


@dataclass(frozen=True)
class HsicResult:
    statistic: float
    p_value: float
    n_permutations: int
    bandwidth_eps: float
    bandwidth_x: float
    method: HsicMethod = HsicMethod.PERMUTATION
    n_features: int = 0


def _as_matrix(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.ndim == 1:
        v = v.reshape(-1, 1)
    return v


def _median_of_nonzero(dists: np.ndarray) -> float:
    nonzero = dists[dists > 0]
    return float(np.median(nonzero)) if nonzero.size else 1.0


def median_bandwidth(v: np.ndarray, rng: Optional[RngStream] = None) -> float:
    """Median nonzero pairwise distance, on a seeded row subsample for large inputs."""
    v = _as_matrix(v)
    if rng is not None and v.shape[0] > BANDWIDTH_ROWS:
        rows = rng.generator().choice(v.shape[0], size=BANDWIDTH_ROWS, replace=False)
        v = v[np.sort(rows)]
    return _median_of_nonzero(pdist(v))


def gaussian_gram_with_bandwidth(v: np.ndarray) -> Tuple[np.ndarray, float]:
    v = _as_matrix(v)
    if v.shape[0] < 2:
        raise InputError(f"Gram matrix needs at least 2 rows, got {v.shape[0]}")
    dists = pdist(v)
    sigma = _median_of_nonzero(dists)
    gram = np.exp(-squareform(dists**2) / (2.0 * sigma**2))
    return gram, sigma


def gaussian_gram(v: np.ndarray) -> np.ndarray:
    """Gaussian Gram matrix with sigma the median of the nonzero pairwise distances."""
    return gaussian_gram_with_bandwidth(v)[0]


def fourier_features(
    v: np.ndarray, sigma: float, n_features: int, generator: np.random.Generator
) -> np.ndarray:
    """Paired cos/sin features with ``Z Z^T`` approximating the Gaussian kernel of width ``sigma``."""
    v = _as_matrix(v)
    w = generator.normal(0.0, 1.0 / sigma, size=(v.shape[1], n_features))
    projected = v @ w
    return np.hstack([np.cos(projected), np.sin(projected)]) / np.sqrt(n_features)


def _center(gram: np.ndarray) -> np.ndarray:
    """H K H without forming H."""
    row = gram.mean(axis=0)
    return gram - row[None, :] - row[:, None] + row.mean()


def _check_pair(eps: np.ndarray, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    eps = _as_matrix(eps)
    x = _as_matrix(x)
    if eps.shape[0] != x.shape[0]:
        raise InputError(f"residuals have {eps.shape[0]} rows, predictors have {x.shape[0]}")
    if eps.shape[0] < MIN_HSIC_ROWS:
        raise InputError(f"HSIC needs at least {MIN_HSIC_ROWS} rows, got {eps.shape[0]}")
    return eps, x


def hsic_stat(eps: np.ndarray, x: np.ndarray) -> float:
    """Biased HSIC estimate between ``eps`` and the joint predictor vector ``x``."""
    eps, x = _check_pair(eps, x)
    n = eps.shape[0]
    k_eps = gaussian_gram(eps)
    k_x_centered = _center(gaussian_gram(x))
    return float(np.sum(k_eps * k_x_centered) / n**2)


def _exceedances_exact(
    eps: np.ndarray, x: np.ndarray, n_perm: int, rng: RngStream
) -> Tuple[float, int, float, float]:
    n = eps.shape[0]
    k_eps, sigma_eps = gaussian_gram_with_bandwidth(eps)
    k_x, sigma_x = gaussian_gram_with_bandwidth(x)
    k_x_centered = _center(k_x)
    observed = float(np.sum(k_eps * k_x_centered) / n**2)
    exceed = 0
    for k in range(n_perm):
        perm = rng.child(k).generator().permutation(n)
        if float(np.sum(k_eps[np.ix_(perm, perm)] * k_x_centered) / n**2) >= observed:
            exceed += 1
    return observed, exceed, sigma_eps, sigma_x


def _exceedances_features(
    eps: np.ndarray, x: np.ndarray, n_perm: int, rng: RngStream, n_features: int
) -> Tuple[float, int, float, float]:
    n = eps.shape[0]
    sigma_eps = median_bandwidth(eps, rng.child(0))
    sigma_x = median_bandwidth(x, rng.child(1))
    z_eps = fourier_features(eps, sigma_eps, n_features, rng.child(2).generator())
    z_x = fourier_features(x, sigma_x, n_features, rng.child(3).generator())
    z_eps -= z_eps.mean(axis=0)
    z_x -= z_x.mean(axis=0)
    observed = float(np.sum((z_eps.T @ z_x) ** 2) / n**2)
    permutations = rng.child(4)
    exceed = 0
    for k in range(n_perm):
        perm = permutations.child(k).generator().permutation(n)
        if float(np.sum((z_eps[perm].T @ z_x) ** 2) / n**2) >= observed:
            exceed += 1
    return observed, exceed, sigma_eps, sigma_x


def hsic_perm_test(
    eps: np.ndarray,
    x: np.ndarray,
    n_perm: int,
    rng: RngStream,
    exact_max_rows: int = EXACT_MAX_ROWS,
    n_features: int = FOURIER_FEATURES,
) -> HsicResult:
    """Permutation test.

    Up to ``exact_max_rows`` rows the statistic uses full Gram matrices and
    permutation ``k`` draws from ``rng.child(k)``. Larger inputs use
    ``n_features`` Fourier features per side, drawn from ``rng.child(2)``
    and ``rng.child(3)``, with permutation ``k`` from ``rng.child(4).child(k)``.
    """
    if n_perm < MIN_PERMUTATIONS:
        raise InputError(f"need at least {MIN_PERMUTATIONS} permutations, got {n_perm}")
    if n_features < 1:
        raise InputError(f"need at least one Fourier feature, got {n_features}")
    eps, x = _check_pair(eps, x)
    if eps.shape[0] <= exact_max_rows:
        used = 0
        observed, exceed, sigma_eps, sigma_x = _exceedances_exact(eps, x, n_perm, rng)
    else:
        used = n_features
        observed, exceed, sigma_eps, sigma_x = _exceedances_features(eps, x, n_perm, rng, n_features)

    p_value = (1 + exceed) / (n_perm + 1)
    logger.debug(
        f"HSIC permutation test: stat={observed:.6g}, exceed={exceed}/{n_perm}, features={used}"
    )
    return HsicResult(
        statistic=observed,
        p_value=p_value,
        n_permutations=n_perm,
        bandwidth_eps=sigma_eps,
        bandwidth_x=sigma_x,
        method=HsicMethod.PERMUTATION,
        n_features=used,
    )


def hsic_gamma_test(eps: np.ndarray, x: np.ndarray) -> HsicResult:
    """Gamma approximation of the null distribution of ``n * statistic``."""
    eps, x = _check_pair(eps, x)
    n = eps.shape[0]
    k_eps, sigma_eps = gaussian_gram_with_bandwidth(eps)
    k_x, sigma_x = gaussian_gram_with_bandwidth(x)
    kc = _center(k_eps)
    lc = _center(k_x)
    statistic = float(np.sum(kc * lc) / n**2)

    var = (kc * lc / 6.0) ** 2
    var = (var.sum() - np.trace(var)) / n / (n - 1)
    var = var * 72 * (n - 4) * (n - 5) / n / (n - 1) / (n - 2) / (n - 3)

    off_eps = k_eps - np.diag(np.diag(k_eps))
    off_x = k_x - np.diag(np.diag(k_x))
    mu_eps = off_eps.sum() / n / (n - 1)
    mu_x = off_x.sum() / n / (n - 1)
    mean = (1 + mu_eps * mu_x - mu_eps - mu_x) / n

    if var <= 0 or mean <= 0:
        # degenerate kernel (e.g. constant residuals): no evidence of dependence
        p_value = 1.0
    else:
        shape = mean**2 / var
        scale = var * n / mean
        p_value = float(gamma.sf(statistic * n, shape, scale=scale))
        p_value = min(1.0, max(p_value, float(np.finfo(float).tiny)))

    return HsicResult(
        statistic=statistic,
        p_value=p_value,
        n_permutations=0,
        bandwidth_eps=sigma_eps,
        bandwidth_x=sigma_x,
        method=HsicMethod.GAMMA,
    )


def hsic_test(
    eps: np.ndarray,
    x: np.ndarray,
    rng: RngStream,
    method: HsicMethod = HsicMethod.PERMUTATION,
    n_perm: int = 500,
    exact_max_rows: int = EXACT_MAX_ROWS,
    n_features: int = FOURIER_FEATURES,
) -> HsicResult:
    """Run the configured calibration."""
    if HsicMethod(method) is HsicMethod.GAMMA:
        return hsic_gamma_test(eps, x)
    return hsic_perm_test(eps, x, n_perm, rng, exact_max_rows=exact_max_rows, n_features=n_features)
