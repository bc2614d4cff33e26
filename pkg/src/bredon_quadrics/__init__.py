"""Bigraded Bredon cohomology rings of real quadrics, computed exactly."""

__version__ = "0.1.0"

from .bigraded_core import BiDegree, FgAbGroup  # noqa: E402
from .quadric import QuadricRing, cohomology_group, multiply, presentation  # noqa: E402

__all__ = ["BiDegree", "FgAbGroup", "QuadricRing", "cohomology_group", "multiply",
           "presentation", "__version__"]
