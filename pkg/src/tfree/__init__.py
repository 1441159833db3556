"""Exact solver for maximum-weight T-free b-factors and b-matchings with
edge-disjoint forbidden triangles."""

__version__ = "0.1.0"
