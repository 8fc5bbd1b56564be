"""Rotor routing, invariants, digit machinery and the ARRIVAL solver."""
