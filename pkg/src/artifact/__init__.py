"""Exact involutive knot Floer calculations over F2[U]."""

__version__ = "0.1.0"
