"""Galois groups of characteristic polynomials of bounded integer matrices."""

__version__ = "0.1.0"
