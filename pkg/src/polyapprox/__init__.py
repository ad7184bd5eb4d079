"""Exact-arithmetic laboratory for polynomial Diophantine approximation."""

__version__ = "0.1.0"

SCHEMA = "polyapprox/v1"
