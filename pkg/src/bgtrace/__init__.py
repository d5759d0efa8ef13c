"""Exact computational homological algebra."""

__version__ = "0.1.0"
