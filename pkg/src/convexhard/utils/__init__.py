"""Utility modules for the convexhard toolkit."""
