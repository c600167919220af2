"""Exact point selection in simplex hypergraphs.

Rational geometry kernels, tight/loose/crossed families of simplices,
simplicial partitions, selection pipelines, semi-algebraic Turan blocks
and halving/k-set counts.
"""

from .errors import GeometryError
from .geometry import Point, PointSet, Simplex
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "GeometryError", "Point", "PointSet", "Simplex", "__version__"]
