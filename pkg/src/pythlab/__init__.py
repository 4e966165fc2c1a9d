"""Exact tools for sums of squares on surfaces z^2 = f(x, y)."""

__version__ = "0.1.0"
