"""
Pytest configuration and shared test fixtures.

Provides the worked path instances, a small three-vertex circuit graph and
helpers to enumerate rotor configurations of tiny instances.
"""

import itertools
import random
from math import gcd
from pathlib import Path
from typing import Iterator

import pytest
import structlog

from rotor_arrival.core.config import get_settings
from rotor_arrival.models.multigraph import Multigraph, ParticleConfig, RotorConfig
from rotor_arrival.models.path_instance import PathInstance

DATA_DIR = Path(__file__).parent / "data"

# arcmonic values of P^{2,3}_3
G_R_233 = [
    0, 8, 12, 16, 18, 20, 24, 26, 27, 28, 30, 32, 34, 35, 36, 38, 39, 40, 42, 43,
    44, 45, 46, 47, 48, 50, 51, 52, 53, 54, 55, 56, 57, 58, 59, 60, 61, 62, 63, 64,
    66, 67, 68, 69, 70, 71, 72, 74, 75, 76, 78, 79, 80, 82, 84, 86, 87, 88, 90, 94,
    96, 98, 102, 106, 114,
]


def small_coprime_parameters(max_n: int = 3, max_degree: int = 5) -> list[tuple[int, int, int]]:
    """Every (n, x, y) with 1 <= n <= max_n, 0 < x < y coprime and x + y <= max_degree."""
    return [
        (n, x, y)
        for n in range(1, max_n + 1)
        for y in range(2, max_degree)
        for x in range(1, y)
        if gcd(x, y) == 1 and x + y <= max_degree
    ]


def all_rotors(instance: PathInstance) -> Iterator[RotorConfig]:
    for labels in itertools.product(range(instance.degree), repeat=instance.n):
        yield instance.rotor_from_labels(labels)


@pytest.fixture(autouse=True)
def clear_settings_cache():
    """Settings are read fresh in every test."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(autouse=True)
def reset_structlog():
    """CLI runs configure structlog against their own captured streams."""
    yield
    structlog.reset_defaults()


@pytest.fixture
def path_233() -> PathInstance:
    """P^{2,3}_3, F = 65."""
    return PathInstance.coprime(3, 2, 3)


@pytest.fixture
def example_233(path_233):
    """rho = (a^1_1, a^2_1, a^3_1), sigma = (-8, 5, 13, -5, 12) on P^{2,3}_3."""
    return path_233.rotor_from_labels([1, 1, 1]), path_233.particles([-8, 5, 13, -5, 12])


@pytest.fixture
def path_113() -> PathInstance:
    """P^{1,1}_3."""
    return PathInstance.unit(3)


@pytest.fixture
def example_113(path_113):
    """u_1 right, u_2 and u_3 left (g = 2), sigma = (-8, 5, 10, -5, 12)."""
    return path_113.rotor_from_labels([0, 1, 1]), path_113.particles([-8, 5, 10, -5, 12])


@pytest.fixture
def triangle_graph() -> Multigraph:
    """
    Vertices 0, 1, 2 each with a first arc to the next one (mod 3) and a
    second arc to the sink 3.
    """
    arcs = [(0, 1), (0, 3), (1, 2), (1, 3), (2, 0), (2, 3)]
    return Multigraph.build(4, [3], arcs, {0: [0, 1], 1: [2, 3], 2: [4, 5]})


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240917)


def zero_sigma(instance: PathInstance) -> ParticleConfig:
    return ParticleConfig.zeros(instance.vertex_count)
