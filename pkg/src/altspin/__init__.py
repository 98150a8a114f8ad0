"""Tensor products with basic spin modules of alternating groups in characteristic 2."""

__version__ = "0.1.0"
