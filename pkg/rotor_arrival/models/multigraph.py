"""
Stopping multigraphs with rotor orders, and the configuration value types.

Arcs are indexed globally. The rotor order at a non-sink vertex is stored as
the cyclic sequence of its out-arc ids, and a rotor configuration stores, per
vertex, the position of the current arc in that sequence, so turning a rotor
is a position increment modulo the outdegree.

Configurations are immutable tuples indexed by vertex id. Entries of a
RotorConfig or RoutingVector at sinks are unused and always 0.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from rotor_arrival.core.exceptions import (
    DimensionMismatchError,
    EmptyRotorOrderError,
    IndexOutOfRangeError,
    InvalidMultigraphError,
    NonStoppingError,
    SinkVertexError,
    SinkWithOutArcError,
)


@dataclass(frozen=True)
class ParticleConfig:
    """Integer particle count per vertex; negative counts are antiparticles."""

    values: tuple[int, ...]

    @classmethod
    def of(cls, values: Iterable[int]) -> ParticleConfig:
        return cls(tuple(int(v) for v in values))

    @classmethod
    def zeros(cls, vertex_count: int) -> ParticleConfig:
        return cls((0,) * vertex_count)

    @classmethod
    def unit(cls, vertex_count: int, vertex: int, amount: int = 1) -> ParticleConfig:
        values = [0] * vertex_count
        values[vertex] = amount
        return cls(tuple(values))

    @property
    def degree(self) -> int:
        """deg(sigma): total number of particles minus antiparticles."""
        return sum(self.values)

    def __getitem__(self, vertex: int) -> int:
        return self.values[vertex]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __add__(self, other: ParticleConfig) -> ParticleConfig:
        if len(other) != len(self):
            raise DimensionMismatchError(len(self), len(other), "particle configuration")
        return ParticleConfig(tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: ParticleConfig) -> ParticleConfig:
        if len(other) != len(self):
            raise DimensionMismatchError(len(self), len(other), "particle configuration")
        return ParticleConfig(tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> ParticleConfig:
        return ParticleConfig(tuple(-a for a in self.values))


@dataclass(frozen=True)
class RotorConfig:
    """Position of the current arc in the rotor order of each non-sink vertex."""

    positions: tuple[int, ...]

    @classmethod
    def of(cls, positions: Iterable[int]) -> RotorConfig:
        return cls(tuple(int(p) for p in positions))

    def __getitem__(self, vertex: int) -> int:
        return self.positions[vertex]

    def __len__(self) -> int:
        return len(self.positions)

    def __iter__(self) -> Iterator[int]:
        return iter(self.positions)


@dataclass(frozen=True)
class RoutingVector:
    """Signed number of routings per non-sink vertex."""

    counts: tuple[int, ...]

    @classmethod
    def of(cls, counts: Iterable[int]) -> RoutingVector:
        return cls(tuple(int(c) for c in counts))

    @classmethod
    def zeros(cls, vertex_count: int) -> RoutingVector:
        return cls((0,) * vertex_count)

    @property
    def l1_norm(self) -> int:
        return sum(abs(c) for c in self.counts)

    def __getitem__(self, vertex: int) -> int:
        return self.counts[vertex]

    def __len__(self) -> int:
        return len(self.counts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.counts)

    def __neg__(self) -> RoutingVector:
        return RoutingVector(tuple(-c for c in self.counts))


@dataclass(frozen=True)
class Multigraph:
    """
    Stopping directed multigraph with a cyclic rotor order at every non-sink vertex.

    Use :meth:`build` to construct a validated instance.
    """

    vertex_count: int
    sinks: frozenset[int]
    arc_tails: tuple[int, ...]
    arc_heads: tuple[int, ...]
    rotor_order: tuple[tuple[int, ...], ...]

    @classmethod
    def build(
        cls,
        vertex_count: int,
        sinks: Iterable[int],
        arcs: Sequence[tuple[int, int]],
        rotor_order: Mapping[int, Sequence[int]],
    ) -> Multigraph:
        """
        Validate a vertex/sink/arc/rotor-order description.

        Args:
            vertex_count: Number of vertices, ids 0..vertex_count-1
            sinks: Sink vertex ids
            arcs: (tail, head) per arc id
            rotor_order: Per non-sink vertex, its out-arc ids in cyclic order

        Returns:
            Multigraph: validated, stopping multigraph

        Raises:
            IndexOutOfRangeError: vertex or arc id out of range
            SinkWithOutArcError: a sink has an outgoing arc
            EmptyRotorOrderError: a non-sink vertex has no outgoing arc
            InvalidMultigraphError: a rotor order is not a permutation of A+(u)
            NonStoppingError: some vertex cannot reach a sink
        """
        if vertex_count < 1:
            raise InvalidMultigraphError("a multigraph needs at least one vertex")
        sink_set = frozenset(int(s) for s in sinks)
        for s in sink_set:
            if not 0 <= s < vertex_count:
                raise IndexOutOfRangeError("sink", s, 0, vertex_count - 1)

        tails: list[int] = []
        heads: list[int] = []
        out_arcs: list[list[int]] = [[] for _ in range(vertex_count)]
        for arc_id, (tail, head) in enumerate(arcs):
            for endpoint in (tail, head):
                if not 0 <= endpoint < vertex_count:
                    raise IndexOutOfRangeError("vertex", endpoint, 0, vertex_count - 1)
            if tail in sink_set:
                raise SinkWithOutArcError(tail)
            tails.append(tail)
            heads.append(head)
            out_arcs[tail].append(arc_id)

        order: list[tuple[int, ...]] = [() for _ in range(vertex_count)]
        for vertex, arc_ids in rotor_order.items():
            if not 0 <= vertex < vertex_count:
                raise IndexOutOfRangeError("vertex", vertex, 0, vertex_count - 1)
            if vertex in sink_set:
                if arc_ids:
                    raise SinkWithOutArcError(vertex)
                continue
            order[vertex] = tuple(int(a) for a in arc_ids)

        for u in range(vertex_count):
            if u in sink_set:
                continue
            if not out_arcs[u] or not order[u]:
                raise EmptyRotorOrderError(u)
            if sorted(order[u]) != sorted(out_arcs[u]):
                raise InvalidMultigraphError(
                    f"rotor order at {u} is not a permutation of its out-arcs",
                    vertex=u,
                    rotor_order=list(order[u]),
                    out_arcs=out_arcs[u],
                )

        graph = cls(
            vertex_count=vertex_count,
            sinks=sink_set,
            arc_tails=tuple(tails),
            arc_heads=tuple(heads),
            rotor_order=tuple(order),
        )
        unreachable = graph._vertices_not_reaching_sinks()
        if unreachable:
            raise NonStoppingError(unreachable)
        return graph

    def _vertices_not_reaching_sinks(self) -> list[int]:
        """Reverse reachability from the sinks."""
        predecessors: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for tail, head in zip(self.arc_tails, self.arc_heads):
            predecessors[head].append(tail)
        reached = set(self.sinks)
        queue = deque(self.sinks)
        while queue:
            v = queue.popleft()
            for p in predecessors[v]:
                if p not in reached:
                    reached.add(p)
                    queue.append(p)
        return [v for v in range(self.vertex_count) if v not in reached]

    @cached_property
    def non_sinks(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.vertex_count) if v not in self.sinks)

    @cached_property
    def order_heads(self) -> tuple[tuple[int, ...], ...]:
        """Head vertex of the arc at each rotor-order position, per vertex."""
        return tuple(tuple(self.arc_heads[a] for a in arcs) for arcs in self.rotor_order)

    @property
    def arc_count(self) -> int:
        return len(self.arc_heads)

    def out_degree(self, vertex: int) -> int:
        return len(self.rotor_order[vertex])

    def is_sink(self, vertex: int) -> bool:
        return vertex in self.sinks

    def require_non_sink(self, vertex: int) -> None:
        if not 0 <= vertex < self.vertex_count:
            raise IndexOutOfRangeError("vertex", vertex, 0, self.vertex_count - 1)
        if vertex in self.sinks:
            raise SinkVertexError(vertex)

    def current_arc(self, rotor: RotorConfig, vertex: int) -> int:
        """Arc id rho(u)."""
        return self.rotor_order[vertex][rotor[vertex]]

    def check_particles(self, sigma: ParticleConfig) -> None:
        if len(sigma) != self.vertex_count:
            raise DimensionMismatchError(self.vertex_count, len(sigma), "particle configuration")

    def check_routing_vector(self, r: RoutingVector) -> None:
        if len(r) != self.vertex_count:
            raise DimensionMismatchError(self.vertex_count, len(r), "routing vector")

    def check_rotor(self, rotor: RotorConfig) -> None:
        if len(rotor) != self.vertex_count:
            raise DimensionMismatchError(self.vertex_count, len(rotor), "rotor configuration")
        for u in self.non_sinks:
            if not 0 <= rotor[u] < self.out_degree(u):
                raise IndexOutOfRangeError("rotor position", rotor[u], 0, self.out_degree(u) - 1)

    def initial_rotor(self) -> RotorConfig:
        """Every rotor at position 0 of its order."""
        return RotorConfig((0,) * self.vertex_count)
