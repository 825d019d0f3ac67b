"""Deterministic half-splits of the sample."""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..errors import InputError
from .rng import Stream, derive_rng

MIN_SPLIT_ROWS = 4


@dataclass(frozen=True, eq=False)
class SplitPlan:
    """Uniform random partition of ``{0..n-1}`` into halves of sizes floor(n/2), ceil(n/2)."""

    seed: int
    b: int
    half_a: np.ndarray
    half_b: np.ndarray

    @property
    def n(self) -> int:
        return len(self.half_a) + len(self.half_b)

    def oriented(self, swapped: bool) -> Tuple[np.ndarray, np.ndarray]:
        """Return (fit rows, evaluation rows); swapped uses the halves the other way round."""
        if swapped:
            return self.half_b, self.half_a
        return self.half_a, self.half_b


def make_split(n: int, seed: int, b: int) -> SplitPlan:
    """Split ``n`` rows for split index ``b``; a pure function of ``(n, seed, b)``."""
    if n < MIN_SPLIT_ROWS:
        raise InputError(f"need at least {MIN_SPLIT_ROWS} rows to split, got {n}")
    if b < 0:
        raise InputError(f"split index must be non-negative, got {b}")

    generator = derive_rng(seed, (Stream.SPLIT, b)).generator()
    permutation = generator.permutation(n)
    half_a = np.sort(permutation[: n // 2])
    half_b = np.sort(permutation[n // 2 :])
    half_a.flags.writeable = False
    half_b.flags.writeable = False
    return SplitPlan(seed=seed, b=b, half_a=half_a, half_b=half_b)
