"""Modules package - single-particle and Cooper pair physics, verification, helpers."""

from src.modules.cooper import PairState, boost_pair, closed_form, decompose
from src.modules.single_particle import SingleState, SpinOrientation, boost_single

__all__ = [
    "PairState",
    "SingleState",
    "SpinOrientation",
    "boost_pair",
    "boost_single",
    "closed_form",
    "decompose",
]
