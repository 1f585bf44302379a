"""Exact geometry, the reduction, solvers and checks."""
