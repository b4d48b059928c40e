"""
Exception hierarchy for boosted-entanglement.

Every error raised on purpose by the library derives from BoostError.
Domain errors also derive from ValueError so that callers that only know
about builtin exceptions still catch them.
"""


class BoostError(Exception):
    """Base class for all library errors."""


class DomainError(BoostError, ValueError):
    """An argument lies outside the domain of an operation."""


class SingularKinematicsError(DomainError):
    """A kinematic quantity diverges (e.g. the D factor at gamma == 1)."""


class DegenerateGeometryError(DomainError):
    """Collinear boosts or a degenerate grid where a non-degenerate one is required."""


class InvalidDensityError(DomainError):
    """A density matrix violates Hermiticity, trace or positivity tolerances."""


class GridTooLargeError(DomainError):
    """A sweep grid exceeds the configured size bound."""

    def __init__(self, size: int, limit: int):
        self.size = size
        self.limit = limit
        super().__init__(f"sweep grid has {size} points, limit is {limit}")
