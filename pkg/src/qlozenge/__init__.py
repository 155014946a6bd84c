"""Exact q-enumeration of lozenge tilings of hexagons with a shamrock notch."""

__version__ = "0.1.0"
