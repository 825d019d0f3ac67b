"""One-sided comparison of selection frequencies."""

from scipy.stats import fisher_exact

from ..errors import InputError


def fisher_exact_less(k1: int, k2: int, trials: int) -> float:
    """P-value of Fisher's exact test that group 1 is selected less often than group 2.

    Args:
        k1: Selections of the first variable
        k2: Selections of the reference variable
        trials: Number of runs for each variable

    Returns:
        Hypergeometric lower-tail probability of the 2x2 table
    """
    if trials < 1:
        raise InputError(f"trials must be positive, got {trials}")
    for k in (k1, k2):
        if not 0 <= k <= trials:
            raise InputError(f"count {k} outside [0, {trials}]")
    table = [[k1, trials - k1], [k2, trials - k2]]
    _, p_value = fisher_exact(table, alternative="less")
    return float(min(1.0, p_value))
