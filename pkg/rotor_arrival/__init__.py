"""Rotor walks and generalized ARRIVAL on path multigraphs."""

__version__ = "1.0.0"
