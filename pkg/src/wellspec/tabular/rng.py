"""Hierarchical, order-independent random streams.

A stream is identified by a master seed and a path of non-negative integer
labels. Draws depend only on ``(master_seed, path)``, never on the order in
which consumers run, so parallel split runs and permutation loops reproduce
exactly.
"""

from dataclasses import dataclass
from enum import IntEnum
from typing import Tuple

import numpy as np

from ..errors import InputError

MAX_SEED = 2**64 - 1


class Stream(IntEnum):
    """Top-level path labels reserving one namespace per consumer."""

    SPLIT = 0
    SPLIT_RUN = 1
    INSAMPLE = 2
    SIMULATION = 3
    CODEC = 4
    SCREENING = 5


@dataclass(frozen=True)
class RngStream:
    """Reproducible random stream addressed by ``(master_seed, path)``."""

    master_seed: int
    path: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not 0 <= self.master_seed <= MAX_SEED:
            raise InputError(f"master seed must be a 64-bit unsigned integer, got {self.master_seed}")
        if any(label < 0 for label in self.path):
            raise InputError(f"stream path labels must be non-negative, got {self.path}")

    def child(self, *labels: int) -> "RngStream":
        """Derive a sub-stream by extending the path."""
        return RngStream(self.master_seed, self.path + tuple(int(label) for label in labels))

    def seed_sequence(self) -> np.random.SeedSequence:
        return np.random.SeedSequence(entropy=self.master_seed, spawn_key=self.path)

    def generator(self) -> np.random.Generator:
        """Fresh generator positioned at the start of this stream."""
        return np.random.Generator(np.random.PCG64(self.seed_sequence()))


def derive_rng(master: int, path: Tuple[int, ...] = ()) -> RngStream:
    """Build the stream for a consumer identified by ``path``."""
    return RngStream(int(master), tuple(int(label) for label in path))
