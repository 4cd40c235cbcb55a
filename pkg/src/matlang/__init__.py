"""Exact toolkit for torsion problems on matrix polynomials."""

__version__ = "0.1.0"
