"""Boosted entanglement - Wigner rotations of spin-1/2 particles and Cooper pairs"""

__version__ = "0.1.0"
