"""Admissible cross-entropy step sizes on the probability simplex."""

__version__ = "0.1.0"
