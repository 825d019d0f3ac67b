"""Independence tests, p-value aggregation and proportion tests."""

from .aggregate import AggregatedPValue, aggregate_pvalues
from .hsic import (
    HsicMethod,
    HsicResult,
    gaussian_gram,
    hsic_gamma_test,
    hsic_perm_test,
    hsic_stat,
    hsic_test,
)
from .proportions import fisher_exact_less
from .ranktests import mann_whitney_u

__all__ = [
    "AggregatedPValue",
    "aggregate_pvalues",
    "HsicMethod",
    "HsicResult",
    "gaussian_gram",
    "hsic_gamma_test",
    "hsic_perm_test",
    "hsic_stat",
    "hsic_test",
    "fisher_exact_less",
    "mann_whitney_u",
]
