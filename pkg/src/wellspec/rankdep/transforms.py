"""Residual transforms applied before selection."""

from enum import Enum

import numpy as np

from ..errors import InputError


class TransformMode(str, Enum):
    ABSOLUTE = "absolute"
    IDENTITY = "identity"


def transform_g(eps: np.ndarray, mode: TransformMode) -> np.ndarray:
    """Apply ``|.|`` or the identity elementwise."""
    eps = np.asarray(eps, dtype=float)
    if not np.all(np.isfinite(eps)):
        raise InputError("residuals contain non-finite values")
    mode = TransformMode(mode)
    if mode is TransformMode.ABSOLUTE:
        return np.abs(eps)
    return eps.copy()
