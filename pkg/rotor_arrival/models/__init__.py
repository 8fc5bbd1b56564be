"""Immutable domain value types."""

from rotor_arrival.models.arrival_solution import ArrivalSolution
from rotor_arrival.models.engel_machine import DigitWord, EngelMachine
from rotor_arrival.models.multigraph import (
    Multigraph,
    ParticleConfig,
    RotorConfig,
    RoutingVector,
)
from rotor_arrival.models.path_instance import PathInstance, path_multigraph

__all__ = [
    "ArrivalSolution",
    "DigitWord",
    "EngelMachine",
    "Multigraph",
    "ParticleConfig",
    "PathInstance",
    "RotorConfig",
    "RoutingVector",
    "path_multigraph",
]
