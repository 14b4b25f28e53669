"""semisep: separability certificates for finite and f.g. commutative semigroups."""

__version__ = "0.1.0"

from .errors import ArgumentError, FormatError, InternalError, ResourceError
from .core import FiniteSemigroup, HomMap, Subset

__all__ = [
    "ArgumentError",
    "FormatError",
    "InternalError",
    "ResourceError",
    "FiniteSemigroup",
    "HomMap",
    "Subset",
]
