"""Hochschild cohomology and Ext algebras of smash products."""

__version__ = "0.1.0"
