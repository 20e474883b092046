"""Finite 2-categories with contravariance and their strictification."""

__version__ = "0.1.0"
