"""Command-line interface."""

from rotor_arrival.cli.commands import cli

__all__ = ["cli"]
