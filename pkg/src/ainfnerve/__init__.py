"""Finite A-infinity categories over F2 and their simplicial nerves."""

__version__ = "0.1.0"
