"""Exact reduction and integration in Weierstrass-like differential fields."""

__version__ = "1.0.0"
