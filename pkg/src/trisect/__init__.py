"""Trisection diagrams of 4-manifolds and their algebraic invariants."""

__version__ = "0.1.0"
