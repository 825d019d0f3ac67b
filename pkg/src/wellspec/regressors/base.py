"""Base regressor interface."""

from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from ..config import RegressorKind, RegressorSpec
from ..errors import RegressionError


class ModelMetadata(BaseModel):
    """Training metadata of a fitted model; persisted in reports instead of the model."""

    kind: RegressorKind
    rounds_used: int = 0
    valid_loss: List[float] = Field(default_factory=list)
    train_loss: List[float] = Field(default_factory=list)
    n_train: int = 0


class FittedModel(ABC):
    """Immutable fitted conditional-mean estimate."""

    def __init__(self, metadata: ModelMetadata):
        self.metadata = metadata

    @abstractmethod
    def predict(self, x: np.ndarray) -> np.ndarray:
        """Predict for each row of ``x``; deterministic given the fitted state."""
        pass


class RegressorBackend(ABC):
    """Abstract base class for regression backends."""

    @abstractmethod
    def get_name(self) -> str:
        """Get backend name."""
        pass

    @abstractmethod
    def get_kind(self) -> RegressorKind:
        """Get the kind this backend serves."""
        pass

    def get_description(self) -> str:
        return self.__class__.__doc__ or self.get_name()

    def get_defaults(self) -> Dict[str, Any]:
        """Hyperparameters the backend reads, with their default values."""
        return RegressorSpec(kind=self.get_kind()).model_dump(mode="json")

    @abstractmethod
    def fit(
        self,
        spec: RegressorSpec,
        x_train: np.ndarray,
        y_train: np.ndarray,
        x_valid: Optional[np.ndarray] = None,
        y_valid: Optional[np.ndarray] = None,
    ) -> FittedModel:
        """Fit on the training rows; validation rows, when given, drive early stopping."""
        pass


def as_design(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x.reshape(-1, 1)
    return x


def check_training_data(
    x_train: np.ndarray,
    y_train: np.ndarray,
    x_valid: Optional[np.ndarray] = None,
    y_valid: Optional[np.ndarray] = None,
) -> Tuple[np.ndarray, np.ndarray, Optional[np.ndarray], Optional[np.ndarray]]:
    """Validate shapes and finiteness, returning 2-D designs and 1-D targets."""
    x_train = as_design(x_train)
    y_train = np.asarray(y_train, dtype=float).reshape(-1)
    if x_train.shape[0] != y_train.shape[0]:
        raise RegressionError(f"training design has {x_train.shape[0]} rows, target has {y_train.shape[0]}")
    if x_train.shape[0] < 1:
        raise RegressionError("no training rows")
    if not (np.all(np.isfinite(x_train)) and np.all(np.isfinite(y_train))):
        raise RegressionError("training data contains non-finite values")

    if (x_valid is None) != (y_valid is None):
        raise RegressionError("validation design and target must be given together")
    if x_valid is not None and y_valid is not None:
        x_valid = as_design(x_valid)
        y_valid = np.asarray(y_valid, dtype=float).reshape(-1)
        if x_valid.shape[0] != y_valid.shape[0] or x_valid.shape[1] != x_train.shape[1]:
            raise RegressionError("validation data does not match the training schema")
        if x_valid.shape[0] == 0:
            x_valid, y_valid = None, None
    return x_train, y_train, x_valid, y_valid
