"""Geometric hypergraph constructions with exact chromatic-number checks."""

__version__ = "0.1.0"
