"""Spherical birational sheets in simple algebraic groups, computed from root data."""

__version__ = "0.1.0"
