from .base import LinearAlgebraBackend
from .float_backend import FloatBackend
from .rational_backend import RationalBackend
from .registry import BackendError, get_backend

__all__ = [
    "LinearAlgebraBackend",
    "FloatBackend",
    "RationalBackend",
    "BackendError",
    "get_backend",
]
