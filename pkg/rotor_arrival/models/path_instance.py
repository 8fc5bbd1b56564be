"""
Path multigraphs P^{x,y}_n and their derived constants.

Vertices are u_0..u_{n+1}; u_0 and u_{n+1} are sinks. At u_k the arc a^k_j
goes right (to u_{k+1}) for j in [0, x-1] and left (to u_{k-1}) for
j in [x, x+y-1]; the rotor order is a^k_j -> a^k_{j+1 mod x+y}, so the
rotor-order position of a^k_j is j.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from rotor_arrival.core.exceptions import (
    DimensionMismatchError,
    IndexOutOfRangeError,
    InvalidInstanceError,
)
from rotor_arrival.models.multigraph import Multigraph, ParticleConfig, RotorConfig


def path_multigraph(n: int, x: int, y: int) -> Multigraph:
    """
    Build P^{x,y}_n as a general multigraph, for any multiplicities.

    The general engine accepts parameters the invariant theory does not
    cover (x >= y, common factors); only x + y >= 1 is needed to stop.
    """
    if n < 0 or x < 0 or y < 0 or x + y < 1:
        raise InvalidInstanceError(
            "path multigraph needs n >= 0, x, y >= 0 and x + y >= 1", n=n, x=x, y=y
        )
    arcs: list[tuple[int, int]] = []
    rotor_order: dict[int, list[int]] = {}
    for k in range(1, n + 1):
        rotor_order[k] = []
        for j in range(x + y):
            rotor_order[k].append(len(arcs))
            arcs.append((k, k + 1 if j < x else k - 1))
    return Multigraph.build(n + 2, (0, n + 1), arcs, rotor_order)


@dataclass(frozen=True)
class PathInstance:
    """
    The path multigraph P^{x,y}_n with harmonic constants.

    Build with :meth:`coprime` (0 < x < y, gcd(x, y) = 1) or :meth:`unit`
    (x = y = 1, closed-form variant).
    """

    n: int
    x: int
    y: int
    is_unit: bool = False

    @classmethod
    def coprime(cls, n: int, x: int, y: int) -> PathInstance:
        if n < 0:
            raise InvalidInstanceError(f"n must be >= 0, got {n}", n=n, x=x, y=y)
        if not 0 < x < y:
            raise InvalidInstanceError(f"solver instances need 0 < x < y, got x={x}, y={y}",
                                       n=n, x=x, y=y)
        if gcd(x, y) != 1:
            raise InvalidInstanceError(f"x={x} and y={y} are not coprime", n=n, x=x, y=y)
        return cls(n=n, x=x, y=y)

    @classmethod
    def unit(cls, n: int) -> PathInstance:
        if n < 0:
            raise InvalidInstanceError(f"n must be >= 0, got {n}", n=n, x=1, y=1)
        return cls(n=n, x=1, y=1, is_unit=True)

    @classmethod
    def from_parameters(cls, n: int, x: int, y: int) -> PathInstance:
        """Dispatch to :meth:`unit` when x = y = 1, else :meth:`coprime`."""
        if x == 1 and y == 1:
            return cls.unit(n)
        return cls.coprime(n, x, y)

    @property
    def degree(self) -> int:
        """Outdegree x + y of every interior vertex."""
        return self.x + self.y

    @property
    def vertex_count(self) -> int:
        return self.n + 2

    @property
    def left_sink(self) -> int:
        return 0

    @property
    def right_sink(self) -> int:
        return self.n + 1

    @cached_property
    def d(self) -> tuple[int, ...]:
        """d_k = x^{n-k} y^k for k in [0, n]."""
        return tuple(self.x ** (self.n - k) * self.y**k for k in range(self.n + 1))

    @cached_property
    def F(self) -> int:  # noqa: N802
        """F = h(u_{n+1}): number of rotor classes and order of the sandpile group."""
        return sum(self.d)

    @cached_property
    def h_table(self) -> tuple[int, ...]:
        """h(u_k) for k in [0, n+1]; h(u_{k+1}) - h(u_k) = d_k."""
        table = [0]
        for dk in self.d:
            table.append(table[-1] + dk)
        return tuple(table)

    @cached_property
    def max_g(self) -> int:
        """Largest arcmonic value of a rotor configuration: sum of x * d_k over [1, n]."""
        return sum(self.x * self.d[k] for k in range(1, self.n + 1))

    @cached_property
    def graph(self) -> Multigraph:
        return path_multigraph(self.n, self.x, self.y)

    def arc_id(self, k: int, j: int) -> int:
        """Global id of a^k_j."""
        self._check_label(k, j)
        return (k - 1) * self.degree + j

    def arc_label(self, arc: int) -> tuple[int, int]:
        """(k, j) such that arc = a^k_j."""
        if not 0 <= arc < self.n * self.degree:
            raise IndexOutOfRangeError("arc", arc, 0, self.n * self.degree - 1)
        k, j = divmod(arc, self.degree)
        return k + 1, j

    def is_right_arc(self, j: int) -> bool:
        return j < self.x

    def rotor_from_labels(self, labels: Sequence[int]) -> RotorConfig:
        """RotorConfig with rho(u_k) = a^k_{labels[k-1]}."""
        if len(labels) != self.n:
            raise DimensionMismatchError(self.n, len(labels), "rotor label list")
        for k, j in enumerate(labels, start=1):
            self._check_label(k, j)
        return RotorConfig((0, *(int(j) for j in labels), 0))

    def labels_of(self, rotor: RotorConfig) -> tuple[int, ...]:
        """Inverse of :meth:`rotor_from_labels`."""
        self.graph.check_rotor(rotor)
        return tuple(rotor.positions[1 : self.n + 1])

    def particles(self, values: Iterable[int]) -> ParticleConfig:
        sigma = ParticleConfig.of(values)
        if len(sigma) != self.vertex_count:
            raise DimensionMismatchError(self.vertex_count, len(sigma), "particle configuration")
        return sigma

    def all_right(self) -> RotorConfig:
        return self.rotor_from_labels([0] * self.n)

    def _check_label(self, k: int, j: int) -> None:
        if not 1 <= k <= self.n:
            raise IndexOutOfRangeError("vertex", k, 1, self.n)
        if not 0 <= j < self.degree:
            raise IndexOutOfRangeError("arc label", j, 0, self.degree - 1)
