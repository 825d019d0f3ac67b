"""Data model, CSV ingestion, split planning and random streams."""

from .dataset import Dataset, load_csv, read_header, write_csv
from .rng import RngStream, Stream, derive_rng
from .splits import SplitPlan, make_split

__all__ = [
    "Dataset",
    "load_csv",
    "read_header",
    "write_csv",
    "RngStream",
    "Stream",
    "derive_rng",
    "SplitPlan",
    "make_split",
]
