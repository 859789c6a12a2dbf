"""Exact computations with twisted derivations of finite-dimensional bialgebras."""

__version__ = "0.1.0"
