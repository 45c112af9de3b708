"""Euler characteristics of jet differential bundles on hypersurfaces and log pairs."""

__version__ = "0.1.0"
