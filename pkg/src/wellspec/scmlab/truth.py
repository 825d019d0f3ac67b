"""Graphical ground truth for the well-specified set."""

import logging
from dataclasses import dataclass
from typing import List, Set, Tuple

from ..errors import InputError
from .graph import d_separated
from .scm import ScmSpec

logger = logging.getLogger(__name__)

TARGET_DISTURBANCE = "__eps_target__"


@dataclass(frozen=True)
class GroundTruth:
    """``w_true`` holds 1-based positions in the observed order."""

    w_true: Tuple[int, ...]
    global_ok: bool
    p: int

    def as_set(self) -> Set[int]:
        return set(self.w_true)


def _hidden_causes(spec: ScmSpec) -> List[str]:
    observed = set(spec.observed)
    return [name for name in spec.graph().predecessors(spec.target) if name not in observed]


def ground_truth_w(spec: ScmSpec) -> GroundTruth:
    """Positions ``j`` whose effect on the target is causally well specified.

    The target's own disturbance is added to the graph as an explicit parent.
    Together with the unobserved parents of the target it forms the set ``H``;
    ``j`` is well specified when ``H`` is d-separated from ``X_j`` given the
    remaining observed predictors.
    """
    if not spec.node(spec.target).separable:
        raise InputError(f"target {spec.target} is not flagged separable; refusing to label")

    dag = spec.graph()
    if TARGET_DISTURBANCE in dag:
        raise InputError(f"node name {TARGET_DISTURBANCE} is reserved")
    dag.add_edge(TARGET_DISTURBANCE, spec.target)
    hidden = set(_hidden_causes(spec)) | {TARGET_DISTURBANCE}

    w_true = []
    for j, name in enumerate(spec.observed, start=1):
        rest = [v for v in spec.observed if v != name]
        if d_separated(dag, hidden, {name}, rest):
            w_true.append(j)
    global_ok = d_separated(dag, hidden, set(spec.observed), set())
    if global_ok != (len(w_true) == len(spec.observed)):
        logger.warning(f"Global and per-variable labels disagree for {spec.name}")
    logger.debug(f"Ground truth for {spec.name}: W={w_true}, global={global_ok}")
    return GroundTruth(w_true=tuple(w_true), global_ok=global_ok, p=len(spec.observed))
