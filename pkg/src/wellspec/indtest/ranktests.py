"""Two-sample rank test for interventional validation."""

import numpy as np
from scipy.stats import mannwhitneyu

from ..errors import InputError

EXACT_LIMIT = 20


def mann_whitney_u(a: np.ndarray, b: np.ndarray) -> float:
    """Two-sided Mann-Whitney U p-value.

    Exact enumeration when the pooled size is at most 20 and there are no
    ties, otherwise the normal approximation with tie correction.
    """
    a = np.asarray(a, dtype=float).reshape(-1)
    b = np.asarray(b, dtype=float).reshape(-1)
    if a.size == 0 or b.size == 0:
        raise InputError("Mann-Whitney U needs two non-empty samples")
    pooled = np.concatenate([a, b])
    has_ties = np.unique(pooled).size < pooled.size
    method = "exact" if pooled.size <= EXACT_LIMIT and not has_ties else "asymptotic"
    result = mannwhitneyu(a, b, alternative="two-sided", method=method)
    return float(result.pvalue)
