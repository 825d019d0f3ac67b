"""Registry of regression backends."""

import logging
from typing import Dict, List, Optional

import numpy as np

from ..config import RegressorKind, RegressorSpec
from ..errors import InputError
from .base import FittedModel, RegressorBackend
from .boosted import BoostedTreesBackend
from .constant import ConstantMeanBackend
from .knn import KnnBackend

logger = logging.getLogger(__name__)


class RegressorRegistry:
    """Registry for managing regression backends."""

    def __init__(self) -> None:
        self._backends: Dict[str, RegressorBackend] = {}
        self._default_backend: Optional[str] = None

    def register(self, backend: RegressorBackend) -> None:
        """Register a backend.

        Args:
            backend: Backend instance to register
        """
        name = backend.get_name()
        if name in self._backends:
            logger.warning(f"Regressor {name} already registered, overwriting")

        self._backends[name] = backend
        logger.debug(f"Registered regressor: {name}")

        if not self._default_backend:
            self._default_backend = name

    def unregister(self, name: str) -> None:
        """Unregister a backend.

        Args:
            name: Backend name to unregister
        """
        if name in self._backends:
            del self._backends[name]
            logger.debug(f"Unregistered regressor: {name}")

            if self._default_backend == name:
                self._default_backend = next(iter(self._backends), None)

    def get_backend(self, kind: str) -> Optional[RegressorBackend]:
        """Get a backend by name or kind.

        Args:
            kind: Backend name, or a RegressorKind

        Returns:
            Backend instance or None if not found
        """
        key = kind.value if isinstance(kind, RegressorKind) else str(kind)
        return self._backends.get(key)

    def list_backends(self) -> List[str]:
        return list(self._backends.keys())

    def get_default_backend(self) -> Optional[RegressorBackend]:
        if self._default_backend:
            return self._backends.get(self._default_backend)
        return None

    def set_default_backend(self, name: str) -> None:
        """Set the default backend.

        Raises:
            InputError: If the backend is not registered
        """
        if name not in self._backends:
            raise InputError(f"Regressor {name} not found in registry")
        self._default_backend = name


def create_default_registry() -> RegressorRegistry:
    """Registry holding the built-in backends, boosted trees as default."""
    registry = RegressorRegistry()
    registry.register(BoostedTreesBackend())
    registry.register(KnnBackend())
    registry.register(ConstantMeanBackend())
    return registry


_registry = create_default_registry()


def get_registry() -> RegressorRegistry:
    return _registry


def fit(
    spec: RegressorSpec,
    x_train: np.ndarray,
    y_train: np.ndarray,
    x_valid: Optional[np.ndarray] = None,
    y_valid: Optional[np.ndarray] = None,
    registry: Optional[RegressorRegistry] = None,
) -> FittedModel:
    """Fit the backend named by ``spec.kind``."""
    backend = (registry or _registry).get_backend(spec.kind)
    if backend is None:
        raise InputError(f"no regressor registered for kind '{spec.kind.value}'")
    return backend.fit(spec, x_train, y_train, x_valid, y_valid)
