"""Shared fixtures."""

import math
import sys
from pathlib import Path

import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.core.kinematics import BoostGeometry
from src.modules.single_particle import SpinOrientation


@pytest.fixture
def generic_geometry():
    """Unequal speeds at a generic angle."""
    return BoostGeometry.of(0.6, 0.85, 1.1)


@pytest.fixture
def generic_spin():
    return SpinOrientation(phi=0.7, eta=2.3)


@pytest.fixture
def reference_geometry():
    """beta1 = beta2 = 0.8 at a right angle: tan(w+ + w-) = 8/15."""
    return BoostGeometry.of(0.8, 0.8, math.pi / 2)
