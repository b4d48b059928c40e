"""Tests package for boosted-entanglement."""
