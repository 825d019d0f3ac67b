"""Checks of an analysis against interventional (knock-down) data."""

import logging
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Mapping, Optional

from ..config import RegressorSpec
from ..errors import InputError, UndefinedStatisticError
from ..indtest.ranktests import mann_whitney_u
from ..regressors.registry import fit
from ..scmlab.metrics import relative_bias
from ..tabular.dataset import Dataset
from ..tabular.rng import RngStream
from .insample import HOLDOUT_FRACTION

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PredictorValidation:
    predictor: str
    # intervening on the predictor shifts the target
    p_predictor_to_target: Optional[float]
    # intervening on the target shifts the predictor
    p_target_to_predictor: Optional[float]
    relative_bias: Optional[float]


@dataclass(frozen=True)
class ValidationResult:
    target: str
    predictors: List[PredictorValidation]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "target": self.target,
            "predictors": [asdict(row) for row in self.predictors],
        }


def _check_schema(obs: Dataset, env: Dataset, name: str) -> None:
    if env.predictor_names != obs.predictor_names or env.target_name != obs.target_name:
        raise InputError(f"environment '{name}' does not share the observational columns")


def validate_interventions(
    obs: Dataset,
    environments: Mapping[str, Dataset],
    spec: RegressorSpec,
    rng: RngStream,
) -> ValidationResult:
    """Compare observational data with knock-down environments.

    Args:
        obs: Observational data
        environments: Datasets keyed by the name of the knocked-down column
        spec: Regressor used for the observational fit behind the relative bias
        rng: Stream for the early-stopping holdout

    Returns:
        Per-predictor Mann-Whitney p-values in both directions and relative bias
    """
    unknown = [k for k in environments if k != obs.target_name and k not in obs.predictor_names]
    if unknown:
        raise InputError(f"environments for unknown columns: {unknown}")
    for name, env in environments.items():
        _check_schema(obs, env, name)

    permutation = rng.generator().permutation(obs.n)
    n_holdout = max(1, int(round(HOLDOUT_FRACTION * obs.n)))
    holdout, train = permutation[:n_holdout], permutation[n_holdout:]
    model = fit(spec, obs.x[train], obs.y[train], obs.x[holdout], obs.y[holdout])

    target_env = environments.get(obs.target_name)
    rows: List[PredictorValidation] = []
    for name in obs.predictor_names:
        env = environments.get(name)
        forward = None if env is None else mann_whitney_u(obs.y, env.y)
        reverse = (
            None
            if target_env is None
            else mann_whitney_u(obs.column(name), target_env.column(name))
        )
        bias = None
        if env is not None:
            try:
                bias = relative_bias(model, env, obs)
            except UndefinedStatisticError as e:
                logger.warning(f"Relative bias for {name} undefined: {e}")
        rows.append(PredictorValidation(name, forward, reverse, bias))
    return ValidationResult(target=obs.target_name, predictors=rows)
