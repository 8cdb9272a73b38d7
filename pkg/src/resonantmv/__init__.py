"""Exact computations with MV integrals, resonance families and Tokuyama-type identities."""

__version__ = "0.1.0"
