"""Immutable tabular data model and CSV ingestion."""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ..errors import InputError

logger = logging.getLogger(__name__)

MIN_ROWS = 4
FLOAT_FORMAT = "%.17g"


def _frozen(values: np.ndarray) -> np.ndarray:
    array = np.array(values, dtype=float, copy=True)
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class Dataset:
    """Observed predictor matrix plus target vector, with column names.

    Arrays are copied on construction and made read-only, so a Dataset can be
    shared between workers without defensive copies.
    """

    x: np.ndarray
    y: np.ndarray
    predictor_names: Tuple[str, ...]
    target_name: str

    def __post_init__(self) -> None:
        x = np.asarray(self.x, dtype=float)
        if x.ndim == 1:
            x = x.reshape(-1, 1)
        if x.ndim != 2:
            raise InputError(f"predictor matrix must be 2-D, got shape {x.shape}")
        y = np.asarray(self.y, dtype=float).reshape(-1)

        names = tuple(str(name) for name in self.predictor_names)
        if x.shape[1] != len(names):
            raise InputError(f"{x.shape[1]} predictor columns but {len(names)} names")
        if x.shape[0] != y.shape[0]:
            raise InputError(f"predictors have {x.shape[0]} rows, target has {y.shape[0]}")
        if len(set(names)) != len(names):
            raise InputError(f"duplicate predictor names: {list(names)}")
        if self.target_name in names:
            raise InputError(f"target '{self.target_name}' is also a predictor")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise InputError("dataset contains non-finite values")

        object.__setattr__(self, "x", _frozen(x))
        object.__setattr__(self, "y", _frozen(y))
        object.__setattr__(self, "predictor_names", names)

    @property
    def n(self) -> int:
        return int(self.y.shape[0])

    @property
    def p(self) -> int:
        return int(self.x.shape[1])

    def column(self, name: str) -> np.ndarray:
        """Return a predictor or the target by name."""
        if name == self.target_name:
            return self.y
        try:
            return self.x[:, self.predictor_names.index(name)]
        except ValueError:
            raise InputError(f"unknown column '{name}'") from None

    def select(self, names: Sequence[str]) -> "Dataset":
        """Keep only the named predictors, in the given order."""
        missing = [name for name in names if name not in self.predictor_names]
        if missing:
            raise InputError(f"unknown predictor columns: {missing}")
        idx = [self.predictor_names.index(name) for name in names]
        return Dataset(self.x[:, idx], self.y, tuple(names), self.target_name)

    def take(self, rows: Union[Sequence[int], np.ndarray]) -> "Dataset":
        """Restrict to a subset of rows."""
        rows = np.asarray(rows, dtype=int)
        return Dataset(self.x[rows], self.y[rows], self.predictor_names, self.target_name)

    def with_target(self, name: str) -> "Dataset":
        """Swap the target with one of the predictors; the old target becomes the last predictor."""
        if name == self.target_name:
            return self
        if name not in self.predictor_names:
            raise InputError(f"unknown column '{name}'")
        j = self.predictor_names.index(name)
        keep = [i for i in range(self.p) if i != j]
        x = np.column_stack([self.x[:, keep], self.y]) if keep else self.y.reshape(-1, 1)
        names = tuple(self.predictor_names[i] for i in keep) + (self.target_name,)
        return Dataset(x, self.x[:, j], names, name)

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.x, columns=list(self.predictor_names))
        frame[self.target_name] = self.y
        return frame


def _parse_cell(cell: str) -> float:
    """Correctly rounded float of a cell; NaN when it does not parse."""
    try:
        return float(cell.strip())
    except ValueError:
        return float("nan")


def read_header(path: Union[str, Path]) -> List[str]:
    """Column names of a CSV file, stripped of surrounding whitespace."""
    path = Path(path)
    if not path.is_file():
        raise InputError(f"input file not found: {path}")
    try:
        header = pd.read_csv(path, header=None, nrows=1, dtype=str, keep_default_na=False)
    except (pd.errors.EmptyDataError, pd.errors.ParserError) as e:
        raise InputError(f"cannot read header of {path}: {e}") from e
    return [cell.strip() for cell in header.iloc[0].tolist()]


def load_csv(path: Union[str, Path], target_name: str, min_rows: int = MIN_ROWS) -> Dataset:
    """Load a clean numeric CSV into a Dataset.

    Args:
        path: CSV file with a header row
        target_name: Header of the response column
        min_rows: Smallest accepted number of data rows

    Returns:
        Dataset whose predictors are all other columns in header order
    """
    path = Path(path)
    headers = read_header(path)

    duplicates = sorted({name for name in headers if headers.count(name) > 1})
    if duplicates:
        raise InputError(f"duplicate column names: {duplicates}")
    if target_name not in headers:
        raise InputError(f"target column '{target_name}' not found in {path}")
    if len(headers) == 1:
        raise InputError("no predictor columns")

    try:
        raw = pd.read_csv(path, dtype=str, keep_default_na=False, skipinitialspace=True)
    except pd.errors.ParserError as e:
        raise InputError(f"malformed CSV {path}: {e}") from e
    raw.columns = headers

    if len(raw) < min_rows:
        raise InputError(f"need at least {min_rows} data rows, got {len(raw)}")

    numeric = raw.apply(lambda col: col.map(_parse_cell))
    bad = ~np.isfinite(numeric.to_numpy(dtype=float))
    if bad.any():
        row, col = (int(v) for v in np.argwhere(bad)[0])
        # line 1 is the header
        raise InputError(
            f"non-numeric or non-finite cell at line {row + 2}, column '{headers[col]}': "
            f"'{raw.iat[row, col]}'"
        )

    predictors = [name for name in headers if name != target_name]
    logger.info(f"Loaded {path.name}: n={len(raw)}, p={len(predictors)}, target={target_name}")
    return Dataset(
        numeric[predictors].to_numpy(dtype=float),
        numeric[target_name].to_numpy(dtype=float),
        tuple(predictors),
        target_name,
    )


def write_csv(dataset: Dataset, path: Union[str, Path]) -> None:
    """Write predictors then target with round-trip precision."""
    dataset.to_frame().to_csv(Path(path), index=False, float_format=FLOAT_FORMAT)
