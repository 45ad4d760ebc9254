"""Exact toolkit for double covers of P^n and the hypersurfaces they push forward to."""

__version__ = "0.1.0"
