"""Structural causal model simulation, graphical ground truth and metrics."""

from .graph import check_acyclic, d_separated
from .metrics import FprTpr, amp, fpr_tpr, relative_bias
from .scm import (
    EdgeFunction,
    EdgeKind,
    NodeSpec,
    NoiseLaw,
    ResidualOracle,
    SampleResult,
    ScmSpec,
    sample_scm,
)
from .suites import SUITE_NAMES, build_suite, fig1_left, fig1_right, fig2_suite, lsnm_suite
from .truth import GroundTruth, ground_truth_w

__all__ = [
    "check_acyclic",
    "d_separated",
    "FprTpr",
    "amp",
    "fpr_tpr",
    "relative_bias",
    "EdgeFunction",
    "EdgeKind",
    "NodeSpec",
    "NoiseLaw",
    "ResidualOracle",
    "SampleResult",
    "ScmSpec",
    "sample_scm",
    "SUITE_NAMES",
    "build_suite",
    "fig1_left",
    "fig1_right",
    "fig2_suite",
    "lsnm_suite",
    "GroundTruth",
    "ground_truth_w",
]
