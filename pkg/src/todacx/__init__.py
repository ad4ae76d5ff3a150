"""Higher Toda brackets and Massey products for chain complexes over Z."""

from ._kernel import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
