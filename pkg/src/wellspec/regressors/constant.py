"""Constant training-mean predictor, the null regression."""

from typing import Optional

import numpy as np

from ..config import RegressorKind, RegressorSpec
from .base import FittedModel, ModelMetadata, RegressorBackend, as_design, check_training_data


class ConstantModel(FittedModel):
    def __init__(self, value: float, metadata: ModelMetadata):
        super().__init__(metadata)
        self.value = value

    def predict(self, x: np.ndarray) -> np.ndarray:
        return np.full(as_design(x).shape[0], self.value)


class ConstantMeanBackend(RegressorBackend):
    """Predicts mean(y_train) everywhere."""

    def get_name(self) -> str:
        return "constant_mean"

    def get_kind(self) -> RegressorKind:
        return RegressorKind.CONSTANT_MEAN

    def fit(
        self,
        spec: RegressorSpec,
        x_train: np.ndarray,
        y_train: np.ndarray,
        x_valid: Optional[np.ndarray] = None,
        y_valid: Optional[np.ndarray] = None,
    ) -> FittedModel:
        x_train, y_train, _, _ = check_training_data(x_train, y_train, x_valid, y_valid)
        metadata = ModelMetadata(kind=RegressorKind.CONSTANT_MEAN, n_train=x_train.shape[0])
        return ConstantModel(float(np.mean(y_train)), metadata)
