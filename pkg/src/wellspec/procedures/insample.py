"""In-sample selection: fit, residualize and select on the same rows."""

import logging

from ..config import Mode, RegressorSpec
from ..errors import InputError
from ..rankdep.foci import FociSelection, foci_select
from ..rankdep.transforms import TransformMode, transform_g
from ..regressors.residuals import DEFAULT_BIG, fit_residual_model
from ..tabular.dataset import Dataset
from ..tabular.rng import RngStream

logger = logging.getLogger(__name__)

MIN_INSAMPLE_ROWS = 8
HOLDOUT_FRACTION = 0.1


def alg1_insample(
    ds: Dataset,
    spec: RegressorSpec,
    g: TransformMode,
    rng: RngStream,
    mode: Mode = Mode.ANM,
    big: float = DEFAULT_BIG,
    standardize: bool = False,
) -> FociSelection:
    """Select predictors on which the transformed in-sample residuals still depend.

    A random 10% holdout, drawn from ``rng.child(0)``, is used only to stop
    the boosting early; the regressor is fitted on the remaining rows and the
    residuals are computed on all rows. Selection draws ties from
    ``rng.child(1)``.
    """
    if ds.n < MIN_INSAMPLE_ROWS:
        raise InputError(f"in-sample selection needs at least {MIN_INSAMPLE_ROWS} rows, got {ds.n}")

    permutation = rng.child(0).generator().permutation(ds.n)
    n_holdout = max(1, int(round(HOLDOUT_FRACTION * ds.n)))
    holdout, train = permutation[:n_holdout], permutation[n_holdout:]

    fit_part, stop_part = ds.take(train), ds.take(holdout)
    model = fit_residual_model(spec, mode, fit_part.x, fit_part.y, stop_part.x, stop_part.y)
    residuals = model.residualize(ds.x, ds.y, big)
    selection = foci_select(
        transform_g(residuals.eps_hat, g), ds.x, rng.child(1), standardize=standardize
    )
    logger.info(
        f"In-sample selection after {model.rounds_used} rounds: "
        f"{[j + 1 for j in selection.selected]}"
    )
    return selection
