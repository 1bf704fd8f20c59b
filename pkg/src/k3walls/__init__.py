"""Exact wall-and-chamber arithmetic for a twisted degree-2 K3 surface,
with the numerical K-theory of a cubic fourfold alongside."""

__version__ = "0.1.0"
