"""Squeezed-quench dynamical quantum phase transitions in the XY chain."""

__version__ = "1.0.0"
