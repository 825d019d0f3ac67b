"""Sample-splitting selection on one oriented half-split."""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..config import Mode, RegressorSpec, TestingConfig
from ..errors import InputError
from ..indtest.hsic import hsic_test
from ..rankdep.foci import foci_select
from ..rankdep.transforms import TransformMode, transform_g
from ..regressors.residuals import DEFAULT_BIG, fit_residual_model
from ..tabular.dataset import Dataset
from ..tabular.rng import RngStream, Stream, derive_rng
from ..tabular.splits import SplitPlan

logger = logging.getLogger(__name__)

MIN_HALF_ROWS = 4


@dataclass(frozen=True, eq=False)
class SplitRun:
    """Outcome of one oriented split; predictor indices are 1-based."""

    b: int
    swapped: bool
    p_b: float
    s_hat_b: Tuple[int, ...]
    selection_order: Tuple[int, ...]
    hsic_statistic: float
    fallback_count: int = 0
    rounds_used: int = 0
    eval_index: Optional[np.ndarray] = field(default=None, repr=False)
    eps_hat: Optional[np.ndarray] = field(default=None, repr=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "b": self.b,
            "swapped": self.swapped,
            "p_b": self.p_b,
            "s_hat_b": list(self.s_hat_b),
            "selection_order": list(self.selection_order),
            "hsic_statistic": self.hsic_statistic,
            "fallback_count": self.fallback_count,
            "rounds_used": self.rounds_used,
        }


def split_stream(plan: SplitPlan, swapped: bool) -> RngStream:
    return derive_rng(plan.seed, (Stream.SPLIT_RUN, plan.b, int(swapped)))


def alg2_split(
    ds: Dataset,
    spec: RegressorSpec,
    g: TransformMode,
    plan: SplitPlan,
    mode: Mode = Mode.ANM,
    swapped: bool = False,
    testing: Optional[TestingConfig] = None,
    big: float = DEFAULT_BIG,
    standardize: bool = False,
) -> SplitRun:
    """Fit on one half, then test and select on the residuals of the other half.

    The independence test draws from ``child(0)`` of the split's stream and
    the selection from ``child(1)``, so each oriented split is reproducible on
    its own.
    """
    testing = testing or TestingConfig()
    if plan.n != ds.n:
        raise InputError(f"split plan covers {plan.n} rows, dataset has {ds.n}")
    fit_rows, eval_rows = plan.oriented(swapped)
    if min(len(fit_rows), len(eval_rows)) < MIN_HALF_ROWS:
        raise InputError(f"both halves need at least {MIN_HALF_ROWS} rows")

    x_eval, y_eval = ds.x[eval_rows], ds.y[eval_rows]
    model = fit_residual_model(spec, mode, ds.x[fit_rows], ds.y[fit_rows], x_eval, y_eval)
    residuals = model.residualize(x_eval, y_eval, big)
    stream = split_stream(plan, swapped)

    result = hsic_test(
        residuals.eps_hat,
        x_eval,
        stream.child(0),
        method=testing.hsic_method,
        n_perm=testing.n_permutations,
        exact_max_rows=testing.exact_max_rows,
        n_features=testing.fourier_features,
    )
    selection = foci_select(
        transform_g(residuals.eps_hat, g), x_eval, stream.child(1), standardize=standardize
    )

    order = tuple(j + 1 for j in selection.selected)
    logger.debug(f"Split {plan.b} (swapped={swapped}): p={result.p_value:.4g}, selected={list(order)}")
    return SplitRun(
        b=plan.b,
        swapped=swapped,
        p_b=result.p_value,
        s_hat_b=tuple(sorted(order)),
        selection_order=order,
        hsic_statistic=result.statistic,
        fallback_count=residuals.fallback_count,
        rounds_used=model.rounds_used,
        eval_index=np.asarray(eval_rows),
        eps_hat=residuals.eps_hat,
    )
