"""Exact wall-and-chamber computations for rank 2 sheaves on del Pezzo
surfaces, the Diophantine classification of component-creating walls, and
Brill-Noether numerology on K3 surfaces."""
from .errors import InvalidInput, PreconditionError
from .lattice import DivisorClass, SurfaceModel

__version__ = "0.1.0"

__all__ = ["DivisorClass", "InvalidInput", "PreconditionError", "SurfaceModel", "__version__"]
