"""Rational cohomology of spaces of commuting elements and their mapping-space comparison."""

__version__ = "0.1.0"
