"""Single random split comparison arm."""

import logging
from fractions import Fraction

from ..config import RunConfig
from ..errors import InputError
from ..tabular.dataset import Dataset
from ..tabular.splits import make_split
from .multisplit import MIN_MULTISPLIT_ROWS, WellSpecReport
from .split import alg2_split

logger = logging.getLogger(__name__)


def single_split_baseline(ds: Dataset, config: RunConfig, verbose: bool = False) -> WellSpecReport:
    """One split, one orientation: if its p-value rejects at ``alpha`` the
    estimated set is the complement of the selection, otherwise all predictors."""
    if ds.n < MIN_MULTISPLIT_ROWS:
        raise InputError(f"need at least {MIN_MULTISPLIT_ROWS} rows, got {ds.n}")

    plan = make_split(ds.n, config.master_seed, 0)
    run = alg2_split(
        ds,
        config.regressor,
        config.effective_g,
        plan,
        mode=config.mode,
        testing=config.testing,
        big=config.big,
        standardize=config.standardize,
    )
    counts = [1 if j in run.s_hat_b else 0 for j in range(1, ds.p + 1)]
    if run.p_b <= config.alpha:
        w_hat = [j for j in range(1, ds.p + 1) if j not in run.s_hat_b]
    else:
        w_hat = list(range(1, ds.p + 1))
    n_bar = Fraction(sum(counts), ds.p)

    logger.info(f"Single split: p={run.p_b:.4g}, estimated set {w_hat}")
    return WellSpecReport(
        method="single_split",
        p0=run.p_b,
        alpha=config.alpha,
        alpha_tilde=config.alpha_tilde,
        B=1,
        mode=config.mode.value,
        g=config.effective_g.value,
        predictors=list(ds.predictor_names),
        counts=counts,
        n_bar=float(n_bar),
        n_bar_exact=str(n_bar),
        n_min=min(c for c in counts if c >= n_bar),
        proportion_pvalues={},
        w_hat=w_hat,
        w_hat_names=[ds.predictor_names[j - 1] for j in w_hat],
        split_pvalues=[run.p_b],
        trials=1,
        fallback_total=run.fallback_count,
        per_split=[run.to_dict()] if verbose else None,
        config=config.echo(),
    )
