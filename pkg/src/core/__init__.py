"""
Core module exports for boosted-entanglement.

Usage:
    from src.core import BoostGeometry, wigner_pair, TemplateRenderer
"""

from src.core.exceptions import BoostError, DomainError
from src.core.kinematics import BoostGeometry, Speed, WignerPair, gamma, wigner_pair
from src.core.qmath import DensityMatrix, StateVector, von_neumann_entropy
from src.core.renderer import TemplateRenderer
from src.core.types import PairKind, RunConfig, VelocityParity

__all__ = [
    "BoostError",
    "BoostGeometry",
    "DensityMatrix",
    "DomainError",
    "PairKind",
    "RunConfig",
    "Speed",
    "StateVector",
    "TemplateRenderer",
    "VelocityParity",
    "WignerPair",
    "gamma",
    "von_neumann_entropy",
    "wigner_pair",
]
