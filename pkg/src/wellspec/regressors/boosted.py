"""Gradient-boosted regression trees with squared loss and early stopping."""

import logging
from typing import List, Optional

import numpy as np
from sklearn.tree import DecisionTreeRegressor

from ..config import RegressorKind, RegressorSpec
from .base import FittedModel, ModelMetadata, RegressorBackend, as_design, check_training_data

logger = logging.getLogger(__name__)


class BoostedTreesModel(FittedModel):
    def __init__(
        self,
        init: float,
        trees: List[DecisionTreeRegressor],
        learning_rate: float,
        metadata: ModelMetadata,
    ):
        super().__init__(metadata)
        self.init = init
        self.trees = list(trees)
        self.learning_rate = learning_rate

    def predict(self, x: np.ndarray) -> np.ndarray:
        x = as_design(x)
        prediction = np.full(x.shape[0], self.init)
        for tree in self.trees:
            prediction += self.learning_rate * tree.predict(x)
        return prediction


class BoostedTreesBackend(RegressorBackend):
    """Stagewise least-squares boosting of depth-limited trees."""

    def get_name(self) -> str:
        return "boosted_trees"

    def get_kind(self) -> RegressorKind:
        return RegressorKind.BOOSTED_TREES

    def fit(
        self,
        spec: RegressorSpec,
        x_train: np.ndarray,
        y_train: np.ndarray,
        x_valid: Optional[np.ndarray] = None,
        y_valid: Optional[np.ndarray] = None,
    ) -> FittedModel:
        x_train, y_train, x_valid, y_valid = check_training_data(x_train, y_train, x_valid, y_valid)
        n_train = x_train.shape[0]
        if n_train < 2 * spec.min_leaf:
            logger.warning(
                f"Only {n_train} training rows for min_leaf={spec.min_leaf}: trees cannot split"
            )

        init = float(np.mean(y_train))
        pred_train = np.full(n_train, init)
        pred_valid = None if x_valid is None else np.full(x_valid.shape[0], init)

        trees: List[DecisionTreeRegressor] = []
        train_loss: List[float] = []
        valid_loss: List[float] = []
        best_loss = np.inf if pred_valid is None else float(np.mean((y_valid - pred_valid) ** 2))
        best_round = 0

        for round_ in range(1, spec.max_rounds + 1):
            residual = y_train - pred_train
            if not np.any(residual):
                break
            tree = DecisionTreeRegressor(
                max_depth=spec.max_depth,
                min_samples_leaf=spec.min_leaf,
                random_state=0,
            )
            tree.fit(x_train, residual)
            if tree.tree_.node_count == 1:
                # no admissible split; residual mean is already zero
                break
            trees.append(tree)
            pred_train = pred_train + spec.learning_rate * tree.predict(x_train)
            train_loss.append(float(np.mean((y_train - pred_train) ** 2)))

            if pred_valid is None:
                best_round = round_
                continue
            pred_valid = pred_valid + spec.learning_rate * tree.predict(x_valid)
            loss = float(np.mean((y_valid - pred_valid) ** 2))
            valid_loss.append(loss)
            if loss < best_loss:
                best_loss, best_round = loss, round_
            elif round_ - best_round >= spec.early_stop_patience:
                logger.debug(f"Early stopping at round {round_}, best round {best_round}")
                break

        metadata = ModelMetadata(
            kind=RegressorKind.BOOSTED_TREES,
            rounds_used=best_round,
            valid_loss=valid_loss,
            train_loss=train_loss,
            n_train=n_train,
        )
        return BoostedTreesModel(init, trees[:best_round], spec.learning_rate, metadata)
