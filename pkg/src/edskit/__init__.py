"""Exact sequences attached to points on elliptic curves."""

__version__ = "0.1.0"
