"""Seeded random path instances for differential runs and the generate command."""

from __future__ import annotations

import random
from math import gcd
from typing import Optional

from rotor_arrival.core.config import get_settings
from rotor_arrival.models.multigraph import ParticleConfig, RotorConfig
from rotor_arrival.models.path_instance import PathInstance

GeneratedInstance = tuple[PathInstance, RotorConfig, ParticleConfig]


class InstanceGenerator:
    """
    Random path instances from one seeded ``random.Random``.

    The same seed always yields the same sequence of instances.
    """

    def __init__(self, seed: Optional[int] = None):
        self.seed = seed if seed is not None else get_settings().default_seed
        self.rng = random.Random(self.seed)

    def parameters(self, max_n: int = 5, max_y: int = 6) -> tuple[int, int, int]:
        """(n, x, y) with n in [1, max_n] and coprime 0 < x < y <= max_y."""
        pairs = [(x, y) for y in range(2, max_y + 1) for x in range(1, y) if gcd(x, y) == 1]
        x, y = self.rng.choice(pairs)
        return self.rng.randint(1, max_n), x, y

    def instance(
        self, n: int, x: int, y: int, magnitude: int = 20, nonnegative: bool = False
    ) -> GeneratedInstance:
        """
        Uniform rotor labels and sigma entries in [-magnitude, magnitude].

        With ``nonnegative`` the interior entries are drawn from [0, magnitude]
        and the sinks hold 0.
        """
        path = PathInstance.from_parameters(n, x, y)
        rotor = path.rotor_from_labels([self.rng.randrange(path.degree) for _ in range(n)])
        if nonnegative:
            values = [0, *(self.rng.randint(0, magnitude) for _ in range(n)), 0]
        else:
            values = [self.rng.randint(-magnitude, magnitude) for _ in range(n + 2)]
        return path, rotor, path.particles(values)

    def random_instance(
        self, max_n: int = 5, max_y: int = 6, magnitude: int = 20, nonnegative: bool = False
    ) -> GeneratedInstance:
        n, x, y = self.parameters(max_n, max_y)
        return self.instance(n, x, y, magnitude, nonnegative)

    def big_sigma(self, path: PathInstance, bits: int) -> ParticleConfig:
        """sigma with signed entries of up to ``bits`` bits."""
        values = [self.rng.getrandbits(bits) * self.rng.choice((-1, 1)) for _ in range(path.vertex_count)]
        return path.particles(values)
