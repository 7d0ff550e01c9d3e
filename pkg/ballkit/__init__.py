"""Ballkit: adaptive spectral computing with functions on the unit ball."""

__version__ = "0.1.0"
