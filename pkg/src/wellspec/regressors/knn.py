"""k-nearest-neighbour regression."""

from typing import Optional

import numpy as np
from sklearn.neighbors import KNeighborsRegressor

from ..config import RegressorKind, RegressorSpec
from .base import FittedModel, ModelMetadata, RegressorBackend, as_design, check_training_data


class KnnModel(FittedModel):
    def __init__(self, estimator: KNeighborsRegressor, metadata: ModelMetadata):
        super().__init__(metadata)
        self.estimator = estimator

    def predict(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(self.estimator.predict(as_design(x)), dtype=float)


class KnnBackend(RegressorBackend):
    """Uniform-weight average of the k nearest training responses."""

    def get_name(self) -> str:
        return "knn"

    def get_kind(self) -> RegressorKind:
        return RegressorKind.KNN

    def fit(
        self,
        spec: RegressorSpec,
        x_train: np.ndarray,
        y_train: np.ndarray,
        x_valid: Optional[np.ndarray] = None,
        y_valid: Optional[np.ndarray] = None,
    ) -> FittedModel:
        x_train, y_train, x_valid, y_valid = check_training_data(x_train, y_train, x_valid, y_valid)
        estimator = KNeighborsRegressor(n_neighbors=min(spec.k, x_train.shape[0]))
        estimator.fit(x_train, y_train)
        valid_loss = []
        if x_valid is not None:
            valid_loss.append(float(np.mean((y_valid - estimator.predict(x_valid)) ** 2)))
        metadata = ModelMetadata(
            kind=RegressorKind.KNN, valid_loss=valid_loss, n_train=x_train.shape[0]
        )
        return KnnModel(estimator, metadata)
