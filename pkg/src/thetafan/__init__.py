"""Exact scattering diagrams, theta functions, and tropical disk counts
for cluster seed data, over arbitrary-precision rationals."""

__version__ = "0.1.0"
