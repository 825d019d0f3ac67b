"""Monte Carlo experiments: simulate, analyze, score against the ground truth."""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ..config import Mode, RunConfig
from ..errors import InputError
from ..procedures.baseline import single_split_baseline
from ..procedures.multisplit import WellSpecReport, run_multisplit, sweep_alpha_tilde
from ..tabular.rng import Stream, derive_rng
from .metrics import amp, fpr_tpr
from .scm import ScmSpec, sample_scm
from .suites import build_suite
from .truth import GroundTruth, ground_truth_w

logger = logging.getLogger(__name__)

MULTISPLIT = "multisplit"
SINGLE_SPLIT = "single_split"


@dataclass(frozen=True, eq=False)
class SimulationResult:
    rows: pd.DataFrame
    summary: pd.DataFrame

    def to_frame(self) -> pd.DataFrame:
        """Run rows followed by summary rows, told apart by ``row_type``."""
        rows = self.rows.assign(row_type="run")
        summary = self.summary.assign(row_type="summary")
        frame = pd.concat([rows, summary], ignore_index=True, sort=False)
        return frame[["row_type"] + [c for c in frame.columns if c != "row_type"]]


def run_seed(master_seed: int, run: int) -> int:
    """64-bit seed of simulation run ``run``."""
    state = derive_rng(master_seed, (Stream.SIMULATION, 2, run)).seed_sequence().generate_state(1, np.uint64)
    return int(state[0])


def _run_row(
    run: int,
    spec: ScmSpec,
    method: str,
    alpha_tilde: float,
    report: WellSpecReport,
    w_hat: Sequence[int],
    truth: GroundTruth,
    amp_value: Optional[float],
) -> Dict[str, Any]:
    row: Dict[str, Any] = {
        "run": run,
        "observed": "|".join(spec.observed),
        "method": method,
        "alpha_tilde": alpha_tilde,
        "p0": report.p0,
        "p_split_min": float(np.min(report.split_pvalues)),
        "p_split_median": float(np.median(report.split_pvalues)),
        "split_pvalues": "|".join(f"{p:.6g}" for p in report.split_pvalues),
    }
    for j in range(1, truth.p + 1):
        row[f"what_{j}"] = int(j in w_hat)
    for j in range(1, truth.p + 1):
        row[f"wtrue_{j}"] = int(j in truth.w_true)
    row["global_ok"] = int(truth.global_ok)
    row["amp"] = amp_value
    return row


def simulate(
    suite: str,
    n: int,
    runs: int,
    config: RunConfig,
    alpha_tildes: Optional[Sequence[float]] = None,
    single_split: bool = False,
    jobs: int = 1,
    custom: Optional[ScmSpec] = None,
) -> SimulationResult:
    """Run ``runs`` simulation replicates of a suite.

    Args:
        suite: Built-in suite name, or ``custom`` together with ``custom``
        n: Rows per simulated dataset
        runs: Number of replicates
        config: Analysis configuration; its ``master_seed`` seeds the whole experiment
        alpha_tildes: Proportion-test levels to score (defaults to ``config.alpha_tilde``)
        single_split: Also score the single-split comparison arm
        jobs: Worker count for the split runs
        custom: Spec for the ``custom`` suite

    Returns:
        One row per (run, observed set, method, level) plus a summary per (method, level)
    """
    if runs < 1:
        raise InputError(f"runs must be positive, got {runs}")
    if suite == "custom" and custom is None:
        raise InputError("custom suite needs a spec")
    levels = list(alpha_tildes) if alpha_tildes else [config.alpha_tilde]
    if any(not 0.0 < level < 1.0 for level in levels):
        raise InputError(f"alpha-tilde levels must lie in (0, 1): {levels}")

    rows: List[Dict[str, Any]] = []
    pairs: Dict[Tuple[str, float], List[Tuple[List[int], GroundTruth]]] = {}
    for r in range(runs):
        seed = run_seed(config.master_seed, r)
        specs = [custom] if suite == "custom" else build_suite(suite, seed)
        run_config = config.model_copy(update={"master_seed": seed})
        logger.info(f"Simulation run {r + 1}/{runs} ({suite}, n={n}, {len(specs)} observed sets)")
        for spec in specs:
            sample = sample_scm(spec, n, derive_rng(seed, (Stream.SIMULATION, 3)))
            truth = ground_truth_w(spec)

            outcome = run_multisplit(sample.dataset, run_config, jobs=jobs)
            amp_value = None
            if config.mode is Mode.LSNM and outcome.runs:
                first = outcome.runs[0]
                amp_value = amp(sample.true_residual[first.eval_index], first.eps_hat)
            for level, w_hat in sweep_alpha_tilde(outcome.report, levels).items():
                rows.append(_run_row(r, spec, MULTISPLIT, level, outcome.report, w_hat, truth, amp_value))
                pairs.setdefault((MULTISPLIT, level), []).append((w_hat, truth))

            if single_split:
                baseline = single_split_baseline(sample.dataset, run_config)
                for level in levels:
                    rows.append(
                        _run_row(r, spec, SINGLE_SPLIT, level, baseline, baseline.w_hat, truth, None)
                    )
                    pairs.setdefault((SINGLE_SPLIT, level), []).append((baseline.w_hat, truth))

    summary = []
    for (method, level), scored in pairs.items():
        rates = fpr_tpr(scored, exclude_globally_specified=True)
        summary.append(
            {
                "method": method,
                "alpha_tilde": level,
                "fpr": rates.fpr,
                "tpr": rates.tpr,
                "fp": rates.fp,
                "negatives": rates.negatives,
                "tp": rates.tp,
                "positives": rates.positives,
            }
        )
        logger.info(f"{method} at alpha_tilde={level}: FPR={rates.fpr}, TPR={rates.tpr}")
    return SimulationResult(rows=pd.DataFrame(rows), summary=pd.DataFrame(summary))
