"""Combinatorial torification of diagonalizable group actions on toric charts."""

from .errors import TorificError

__version__ = "0.1.0"
__all__ = ["TorificError", "__version__"]
