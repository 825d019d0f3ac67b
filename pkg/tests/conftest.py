"""Pytest configuration and fixtures."""

from pathlib import Path

import numpy as np
import pytest

from wellspec.config import RegressorKind, RegressorSpec, RunConfig, TestingConfig
from wellspec.regressors.base import FittedModel, ModelMetadata
from wellspec.tabular.dataset import Dataset
from wellspec.tabular.rng import RngStream, derive_rng


class FixedModel(FittedModel):
    """Model returning a fixed prediction vector, or a function of the design."""

    def __init__(self, predict_fn):
        super().__init__(ModelMetadata(kind=RegressorKind.CONSTANT_MEAN))
        self.predict_fn = predict_fn

    def predict(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(self.predict_fn(np.asarray(x, dtype=float)), dtype=float)


@pytest.fixture
def rng() -> RngStream:
    """Root stream for tests."""
    return derive_rng(12345)


@pytest.fixture
def linear_dataset() -> Dataset:
    """y = x1 + N(0, 0.25), x2 independent noise, n=120."""
    generator = np.random.default_rng(7)
    x = generator.uniform(-1, 1, size=(120, 2))
    y = x[:, 0] + generator.normal(0, 0.5, size=120)
    return Dataset(x, y, ("x1", "x2"), "y")


@pytest.fixture
def fast_config() -> RunConfig:
    """Small but complete analysis configuration."""
    return RunConfig(
        splits=2,
        regressor=RegressorSpec(max_rounds=20, early_stop_patience=5),
        testing=TestingConfig(n_permutations=19),
        master_seed=3,
    )


@pytest.fixture
def toy_csv(tmp_path: Path) -> Path:
    """CSV with n=200 rows: y = x1 + noise, x2 independent."""
    generator = np.random.default_rng(11)
    x1 = generator.uniform(-1, 1, 200)
    x2 = generator.uniform(-1, 1, 200)
    y = x1 + generator.normal(0, 0.3, 200)
    path = tmp_path / "toy.csv"
    lines = ["x1,x2,y"] + [
        f"{float(a)!r},{float(b)!r},{float(c)!r}" for a, b, c in zip(x1, x2, y)
    ]
    path.write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture
def fixed_model():
    """Factory for models with a prescribed prediction function."""
    return FixedModel
