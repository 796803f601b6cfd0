"""Ancilla-free reversible logic synthesis on a self-contained BDD engine."""

__version__ = "0.1.0"
