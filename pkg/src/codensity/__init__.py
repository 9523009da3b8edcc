"""Finite-scale codensity monads, dualities and their verification."""

__version__ = "0.1.0"
