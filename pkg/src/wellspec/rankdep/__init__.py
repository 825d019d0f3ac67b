"""Rank statistics, nearest neighbours, CODEC and FOCI."""

from .codec import (
    DependenceStat,
    codec_q,
    codec_s_conditional,
    codec_s_unconditional,
    codec_t,
)
from .foci import FociSelection, foci_select
from .neighbors import NeighborMap, nearest_neighbors
from .ranks import RankVector, ranks
from .transforms import TransformMode, transform_g

__all__ = [
    "DependenceStat",
    "codec_q",
    "codec_s_conditional",
    "codec_s_unconditional",
    "codec_t",
    "FociSelection",
    "foci_select",
    "NeighborMap",
    "nearest_neighbors",
    "RankVector",
    "ranks",
    "TransformMode",
    "transform_g",
]
