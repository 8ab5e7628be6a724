"""Large circulant graphs of given degree and diameter: constructions, checks, search."""

from .cyclic import CirculantGraph, ConnectionSet, normalize
from .metrics import diameter, verify_diameter_at_most

__all__ = ["CirculantGraph", "ConnectionSet", "normalize", "diameter", "verify_diameter_at_most"]
__version__ = "0.1.0"
