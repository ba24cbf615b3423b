"""Exact computations for superelliptic jacobians y^q = f(x)."""

from .exactalg import PrimePower, UniPoly
from .curvegeom import CurveShape

__version__ = "0.1.0"

__all__ = ["PrimePower", "UniPoly", "CurveShape", "__version__"]
