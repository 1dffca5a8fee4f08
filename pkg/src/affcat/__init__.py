"""Exact combinatorics of affine category O at rational level."""

__version__ = "0.1.0"
