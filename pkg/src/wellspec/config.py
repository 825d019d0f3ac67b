"""Configuration management for wellspec."""

import os
from enum import Enum
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field, field_validator

from .indtest.hsic import EXACT_MAX_ROWS, FOURIER_FEATURES, HsicMethod
from .rankdep.transforms import TransformMode


class Mode(str, Enum):
    ANM = "anm"
    LSNM = "lsnm"


class RegressorKind(str, Enum):
    BOOSTED_TREES = "boosted_trees"
    KNN = "knn"
    CONSTANT_MEAN = "constant_mean"


class RegressorSpec(BaseModel):
    """Regression backend and its hyperparameters."""

    kind: RegressorKind = Field(default=RegressorKind.BOOSTED_TREES)
    max_rounds: int = Field(default=500, ge=1)
    learning_rate: float = Field(default=0.1, gt=0.0, le=1.0)
    max_depth: int = Field(default=3, ge=1)
    min_leaf: int = Field(default=5, ge=1)
    early_stop_patience: int = Field(default=20, ge=1)
    k: int = Field(default=10, ge=1)


class TestingConfig(BaseModel):
    """Calibration of the global independence test and the p-value aggregation."""

    __test__ = False

    n_permutations: int = Field(default=500, ge=19)
    hsic_method: HsicMethod = Field(default=HsicMethod.PERMUTATION)
    gamma_min: float = Field(default=0.05, gt=0.0, lt=1.0)
    exact_max_rows: int = Field(default=EXACT_MAX_ROWS, ge=4)
    fourier_features: int = Field(default=FOURIER_FEATURES, ge=1)


class RunConfig(BaseModel):
    """Everything that determines a report; echoed verbatim into it."""

    mode: Mode = Field(default=Mode.ANM)
    splits: int = Field(default=25, ge=1)
    alpha: float = Field(default=0.05, gt=0.0, lt=1.0)
    alpha_tilde: float = Field(default=0.01, gt=0.0, lt=1.0)
    g: Optional[TransformMode] = Field(default=None)
    regressor: RegressorSpec = Field(default_factory=RegressorSpec)
    testing: TestingConfig = Field(default_factory=TestingConfig)
    master_seed: int = Field(default=0, ge=0, le=2**64 - 1)
    big: float = Field(default=1e6, gt=0.0)
    standardize: bool = Field(default=False)
    input_path: Optional[str] = Field(default=None)
    target: Optional[str] = Field(default=None)

    @property
    def effective_g(self) -> TransformMode:
        """Absolute value for additive noise, identity for location-scale."""
        if self.g is not None:
            return self.g
        return TransformMode.IDENTITY if self.mode is Mode.LSNM else TransformMode.ABSOLUTE

    def echo(self) -> Dict[str, Any]:
        data = self.model_dump(mode="json")
        data["g"] = self.effective_g.value
        return data


class WellspecSettings(BaseModel):
    """Environment-level defaults plus execution options that never enter a report."""

    run: RunConfig = Field(default_factory=RunConfig)
    jobs: int = Field(default=1)
    log_level: str = Field(default="INFO")

    @field_validator("jobs")
    @classmethod
    def validate_jobs(cls, v: int) -> int:
        if v == 0 or v < -1:
            raise ValueError("jobs must be a positive worker count or -1 for all cores")
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        if v.upper() not in ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]:
            raise ValueError("log_level must be DEBUG, INFO, WARNING, ERROR or CRITICAL")
        return v.upper()

    @classmethod
    def from_env(cls) -> "WellspecSettings":
        """Create settings from WELLSPEC_* environment variables."""
        run: Dict[str, Any] = {
            "mode": os.getenv("WELLSPEC_MODE", "anm"),
            "splits": int(os.getenv("WELLSPEC_SPLITS", "25")),
            "alpha": float(os.getenv("WELLSPEC_ALPHA", "0.05")),
            "alpha_tilde": float(os.getenv("WELLSPEC_ALPHA_TILDE", "0.01")),
            "master_seed": int(os.getenv("WELLSPEC_SEED", "0")),
            "regressor": {"kind": os.getenv("WELLSPEC_REGRESSOR", "boosted_trees")},
            "testing": {"n_permutations": int(os.getenv("WELLSPEC_PERMS", "500"))},
        }
        return cls(
            run=run,
            jobs=int(os.getenv("WELLSPEC_JOBS", "1")),
            log_level=os.getenv("WELLSPEC_LOG", "INFO"),
        )

