"""Numerical laboratory for period-doubling renormalization of Henon-like maps."""

__version__ = "0.1.0"
