"""Exact graphical calculus for SL(2)-invariants of points on the line."""

__version__ = "0.1.0"
