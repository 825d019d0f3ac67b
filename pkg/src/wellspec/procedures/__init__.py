"""In-sample, sample-splitting and multisplit well-specification procedures."""

from .baseline import single_split_baseline
from .insample import alg1_insample
from .multisplit import (
    MultisplitOutcome,
    Selection,
    WellSpecReport,
    alg3_multisplit,
    run_multisplit,
    select_well_specified,
    sweep_alpha_tilde,
)
from .screening import ScreeningResult, screen_target
from .split import SplitRun, alg2_split
from .validation import ValidationResult, validate_interventions

__all__ = [
    "single_split_baseline",
    "alg1_insample",
    "MultisplitOutcome",
    "Selection",
    "WellSpecReport",
    "alg3_multisplit",
    "run_multisplit",
    "select_well_specified",
    "sweep_alpha_tilde",
    "ScreeningResult",
    "screen_target",
    "SplitRun",
    "alg2_split",
    "ValidationResult",
    "validate_interventions",
]
