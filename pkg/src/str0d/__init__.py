"""Finite frames, congruence frames and strictly zero-dimensional biframes."""

__version__ = "0.1.0"
