"""Discrete constant mean curvature surfaces from holomorphic data."""

__version__ = "0.1.0"
