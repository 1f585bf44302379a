"""Convex position hardness toolkit: exact reduction, solvers and checks."""

__version__ = "1.0.0"
