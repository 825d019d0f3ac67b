"""Variable selection with multiple splits.

Every random half-split is used in both orientations, giving 2B runs. The
split p-values are aggregated into a global p-value ``p0``; if the global
null is not rejected every predictor is declared well specified. Otherwise
predictors selected below the mean count are kept when a one-sided Fisher
test against the smallest above-mean count rejects at ``alpha_tilde``.
"""

import logging
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from joblib import Parallel, delayed
from pydantic import BaseModel, Field

from ..config import RunConfig
from ..errors import InputError
from ..indtest.aggregate import aggregate_pvalues
from ..indtest.proportions import fisher_exact_less
from ..tabular.dataset import Dataset
from ..tabular.splits import make_split
from .split import SplitRun, alg2_split

logger = logging.getLogger(__name__)

MIN_MULTISPLIT_ROWS = 8


@dataclass(frozen=True)
class Selection:
    """Outcome of the selection arithmetic; variables are 1-based."""

    w_hat: Tuple[int, ...]
    n_bar: Fraction
    n_min: int
    proportion_pvalues: Dict[int, float]
    global_rejected: bool


def select_well_specified(
    counts: Sequence[int], p0: float, alpha: float, alpha_tilde: float, trials: int
) -> Selection:
    """Turn selection counts and the global p-value into the estimated well-specified set.

    Args:
        counts: Per-variable number of runs whose selection contained it
        p0: Aggregated global p-value
        alpha: Level of the global test
        alpha_tilde: Level of the per-variable proportion tests
        trials: Number of runs behind each count

    Returns:
        Selection with the 1-based set, mean count and proportion p-values
    """
    if not counts:
        raise InputError("no variables to select from")
    if any(not 0 <= c <= trials for c in counts):
        raise InputError(f"counts must lie in [0, {trials}]: {list(counts)}")

    n_bar = Fraction(sum(counts), len(counts))
    # the maximum count is never below the mean, so this set is non-empty
    n_min = min(c for c in counts if c >= n_bar)
    pvalues = {
        j + 1: fisher_exact_less(c, n_min, trials) for j, c in enumerate(counts) if c < n_bar
    }

    rejected = p0 <= alpha
    if rejected:
        w_hat = tuple(j for j, p in sorted(pvalues.items()) if p <= alpha_tilde)
    else:
        w_hat = tuple(range(1, len(counts) + 1))
    return Selection(
        w_hat=w_hat, n_bar=n_bar, n_min=n_min, proportion_pvalues=pvalues, global_rejected=rejected
    )


class WellSpecReport(BaseModel):
    """Serializable result of a well-specification analysis."""

    method: str = Field(default="multisplit")
    p0: float
    alpha: float
    alpha_tilde: float
    B: int
    mode: str
    g: str
    predictors: List[str]
    counts: List[int]
    n_bar: float
    n_bar_exact: str
    n_min: int
    proportion_pvalues: Dict[str, float]
    w_hat: List[int]
    w_hat_names: List[str]
    split_pvalues: List[float]
    trials: int
    gamma_star: Optional[float] = None
    fallback_total: int = 0
    per_split: Optional[List[Dict[str, Any]]] = None
    config: Dict[str, Any]
    created_at: str = Field(default_factory=lambda: datetime.now(timezone.utc).isoformat())

    def to_json(self, include_timestamp: bool = True) -> str:
        exclude = None if include_timestamp else {"created_at"}
        return self.model_dump_json(indent=2, exclude=exclude)


@dataclass(frozen=True)
class MultisplitOutcome:
    report: WellSpecReport
    runs: Tuple[SplitRun, ...]


def build_report(
    ds: Dataset,
    config: RunConfig,
    counts: Sequence[int],
    p0: float,
    trials: int,
    split_pvalues: Iterable[float],
    gamma_star: Optional[float] = None,
    runs: Sequence[SplitRun] = (),
    verbose: bool = False,
) -> WellSpecReport:
    selection = select_well_specified(counts, p0, config.alpha, config.alpha_tilde, trials)
    return WellSpecReport(
        p0=p0,
        alpha=config.alpha,
        alpha_tilde=config.alpha_tilde,
        B=config.splits,
        mode=config.mode.value,
        g=config.effective_g.value,
        predictors=list(ds.predictor_names),
        counts=list(counts),
        n_bar=float(selection.n_bar),
        n_bar_exact=str(selection.n_bar),
        n_min=selection.n_min,
        proportion_pvalues={str(j): p for j, p in selection.proportion_pvalues.items()},
        w_hat=list(selection.w_hat),
        w_hat_names=[ds.predictor_names[j - 1] for j in selection.w_hat],
        split_pvalues=list(split_pvalues),
        trials=trials,
        gamma_star=gamma_star,
        fallback_total=sum(run.fallback_count for run in runs),
        per_split=[run.to_dict() for run in runs] if verbose else None,
        config=config.echo(),
    )


def _run_split(ds: Dataset, config: RunConfig, b: int, swapped: bool) -> SplitRun:
    plan = make_split(ds.n, config.master_seed, b)
    return alg2_split(
        ds,
        config.regressor,
        config.effective_g,
        plan,
        mode=config.mode,
        swapped=swapped,
        testing=config.testing,
        big=config.big,
        standardize=config.standardize,
    )


def run_multisplit(
    ds: Dataset, config: RunConfig, jobs: int = 1, verbose: bool = False
) -> MultisplitOutcome:
    """Run all 2B oriented splits and build the report.

    Run ``b`` uses split ``b`` as drawn and run ``B + b`` the same split with
    the halves swapped. The result does not depend on ``jobs``.
    """
    if ds.n < MIN_MULTISPLIT_ROWS:
        raise InputError(f"need at least {MIN_MULTISPLIT_ROWS} rows, got {ds.n}")
    if ds.p < 1:
        raise InputError("no predictor columns")

    B = config.splits
    logger.info(f"Running {2 * B} split runs (mode={config.mode.value}, n={ds.n}, p={ds.p}, jobs={jobs})")
    tasks = [(b, swapped) for swapped in (False, True) for b in range(B)]
    runs = Parallel(n_jobs=jobs)(delayed(_run_split)(ds, config, b, s) for b, s in tasks)
    runs = tuple(runs)

    aggregated = aggregate_pvalues([run.p_b for run in runs], config.testing.gamma_min)
    counts = [sum(1 for run in runs if j in run.s_hat_b) for j in range(1, ds.p + 1)]
    logger.info(f"Aggregated p-value {aggregated.p0:.4g}; selection counts {counts}")

    report = build_report(
        ds,
        config,
        counts,
        aggregated.p0,
        trials=len(runs),
        split_pvalues=aggregated.per_split,
        gamma_star=aggregated.gamma_star,
        runs=runs,
        verbose=verbose,
    )
    logger.info(f"Estimated well-specified set: {report.w_hat_names}")
    return MultisplitOutcome(report=report, runs=runs)


def alg3_multisplit(
    ds: Dataset, config: RunConfig, jobs: int = 1, verbose: bool = False
) -> WellSpecReport:
    return run_multisplit(ds, config, jobs=jobs, verbose=verbose).report


def sweep_alpha_tilde(report: WellSpecReport, alpha_tildes: Iterable[float]) -> Dict[float, List[int]]:
    """Recompute the estimated set for several proportion-test levels from stored counts."""
    if report.method != "multisplit":
        return {level: list(report.w_hat) for level in alpha_tildes}
    return {
        level: list(
            select_well_specified(
                report.counts, report.p0, report.alpha, level, report.trials
            ).w_hat
        )
        for level in alpha_tildes
    }
