"""Exception hierarchy.

Every domain failure derives from :class:`GeometryError` so the CLI can map
it to exit code 1 without catching programming errors.
"""

from __future__ import annotations


class GeometryError(Exception):
    """Base class for all domain errors raised by this package."""


class DimensionMismatch(GeometryError, ValueError):
    pass


class DegenerateSupport(GeometryError):
    pass


class WitnessOnHyperplane(GeometryError):
    pass


class RetryExhausted(GeometryError):
    pass


class DegenerateVertices(GeometryError):
    pass


class NotSeparated(GeometryError):
    pass


class NoTransversal(GeometryError):
    pass


class NotPinned(GeometryError):
    pass


class NotLoose(GeometryError):
    pass


class InvalidR(GeometryError, ValueError):
    pass


class IndexOutOfRange(GeometryError, IndexError):
    pass


class EmptyColorClass(GeometryError):
    pass


class InsufficientPoints(GeometryError):
    pass


class CliqueNotFound(GeometryError):
    pass


class UnsupportedDimension(GeometryError):
    pass


class EmptyEdgeSet(GeometryError):
    pass


class DensityTooLow(GeometryError):
    pass


class TooFewPoints(GeometryError):
    pass


class InvalidK(GeometryError, ValueError):
    pass


class ParseError(GeometryError, ValueError):
    pass


class DimensionError(GeometryError, ValueError):
    pass
