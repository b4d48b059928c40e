"""
Base schemas for boosted-entanglement reports.

Every JSON report derives from BaseReport, which pins the schema version.
The small view models flatten domain objects into the stable JSON layout.
"""

from typing import Literal

from pydantic import BaseModel, Field

from src.core.kinematics import BoostGeometry
from src.modules.single_particle import SpinOrientation


SCHEMA_VERSION = 1

# [re, im]
ComplexPair = tuple[float, float]


def complex_pair(z: complex) -> ComplexPair:
    return (float(z.real), float(z.imag))


class BaseReport(BaseModel):
    """
    Base class for every report the CLI emits.

    Example:
        class AnalysisReport(BaseReport):
            entropy_bits: float
    """
    schema_version: Literal[1] = Field(default=SCHEMA_VERSION, description="JSON report schema version")


class GeometryView(BaseModel):
    """Boost geometry with speeds as bare fractions of c and theta in radians."""
    v1: float
    v2: float
    theta: float

    @classmethod
    def of(cls, g: BoostGeometry) -> "GeometryView":
        return cls(v1=g.v1.beta, v2=g.v2.beta, theta=g.theta)


class SpinView(BaseModel):
    """Spin axis angles in radians."""
    phi: float
    eta: float

    @classmethod
    def of(cls, s: SpinOrientation) -> "SpinView":
        return cls(phi=s.phi, eta=s.eta)
