"""Exact symbolic engine for three-colored operads of planar diagrams."""

__version__ = "0.1.0"
