"""Exact verification toolkit for compactified Prymians of quartic double solids."""

__version__ = "0.1.0"
