"""Target and predictor pre-selection from Markov-blanket estimates."""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Tuple

import numpy as np

from ..errors import InputError
from ..rankdep.foci import foci_select
from ..tabular.dataset import Dataset
from ..tabular.rng import RngStream

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScreeningResult:
    target: str
    predictors: Tuple[str, ...]
    agreement: Dict[str, float]
    columns: Tuple[str, ...]

    def to_dict(self) -> Dict[str, object]:
        return {
            "target": self.target,
            "predictors": list(self.predictors),
            "agreement": dict(self.agreement),
            "columns": list(self.columns),
        }


def _jaccard(a: FrozenSet[int], b: FrozenSet[int]) -> float:
    union = a | b
    return len(a & b) / len(union) if union else 0.0


def screen_target(data: Dataset, rng: RngStream, positive_only: bool = False) -> ScreeningResult:
    """Pick a target column and its predictors from all columns of ``data``.

    For each column, selection with that column as response gives one blanket
    estimate; the columns whose selection contains it give another. The
    target is the column whose two estimates agree best (intersection over
    union, lowest column first on ties) and the predictors are the
    intersection of its two estimates. With ``positive_only`` only columns
    that are strictly positive in every row take part.
    """
    names = list(data.predictor_names) + [data.target_name]
    matrix = np.column_stack([data.x, data.y])
    if positive_only:
        keep = [k for k in range(len(names)) if np.all(matrix[:, k] > 0)]
        names = [names[k] for k in keep]
        matrix = matrix[:, keep]
    q = len(names)
    if q < 2:
        raise InputError(f"screening needs at least 2 columns, got {q}")

    pool = Dataset(matrix[:, :-1], matrix[:, -1], tuple(names[:-1]), names[-1])
    position = {name: k for k, name in enumerate(names)}
    selected: List[FrozenSet[int]] = []
    for k in range(q):
        view = pool.with_target(names[k])
        selection = foci_select(view.y, view.x, rng.child(k))
        selected.append(frozenset(position[view.predictor_names[j]] for j in selection.selected))
        logger.debug(f"Blanket of {names[k]}: {sorted(names[c] for c in selected[-1])}")

    agreement: Dict[str, float] = {}
    best_k, best_score = 0, -1.0
    for k in range(q):
        reverse = frozenset(c for c in range(q) if c != k and k in selected[c])
        score = _jaccard(selected[k], reverse)
        agreement[names[k]] = score
        if score > best_score:
            best_k, best_score = k, score

    reverse = frozenset(c for c in range(q) if c != best_k and best_k in selected[c])
    predictors = tuple(names[c] for c in sorted(selected[best_k] & reverse))
    logger.info(f"Screening chose target {names[best_k]} (agreement {best_score:.3f}) with {list(predictors)}")
    return ScreeningResult(
        target=names[best_k], predictors=predictors, agreement=agreement, columns=tuple(names)
    )
