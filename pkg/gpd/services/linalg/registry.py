from __future__ import annotations

from functools import lru_cache

from gpd.config import get_settings

from .base import LinearAlgebraBackend
from .float_backend import FloatBackend
from .rational_backend import RationalBackend

_BACKENDS: dict[str, type[LinearAlgebraBackend]] = {
    "rational": RationalBackend,
    "float": FloatBackend,
}


class BackendError(ValueError):
    """Raised when a backend name does not match a registered backend."""

    def __init__(self, backend_key: str) -> None:
        super().__init__(f"Unsupported linear algebra backend: {backend_key}")
        self.backend_key = backend_key


@lru_cache()
def get_backend(name: str | None = None, tolerance: float | None = None) -> LinearAlgebraBackend:
    settings = get_settings()
    backend_key = (name or settings.backend).lower()
    if backend_key not in _BACKENDS:
        raise BackendError(backend_key)
    return _BACKENDS[backend_key](tolerance=tolerance or settings.tolerance)
