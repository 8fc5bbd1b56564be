"""
Chip Firing Service.

Firing and unfiring vertices, and stabilization by legal firings on any
stopping multigraph. Used for the sandpile side of the path invariants and
to cross-check the Engel machine stabilization.
"""

from __future__ import annotations

import heapq
import random
from typing import Optional

import structlog

from rotor_arrival.core.config import get_settings
from rotor_arrival.core.exceptions import StepBudgetExceededError
from rotor_arrival.models.multigraph import Multigraph, ParticleConfig, RoutingVector

logger = structlog.get_logger()


class ChipFiringService:
    """Chip firing on one multigraph."""

    def __init__(self, graph: Multigraph, max_firings: Optional[int] = None):
        self.graph = graph
        self.max_firings = (
            max_firings if max_firings is not None else get_settings().stabilize_max_firings
        )

    def fire(self, sigma: ParticleConfig, u: int, times: int = 1) -> ParticleConfig:
        """
        sigma + times * Delta(u): u sends one particle along each out-arc.

        Raises:
            SinkVertexError: u is a sink
        """
        self.graph.require_non_sink(u)
        self.graph.check_particles(sigma)
        values = list(sigma)
        self._fire(values, u, times)
        return ParticleConfig(tuple(values))

    def unfire(self, sigma: ParticleConfig, u: int, times: int = 1) -> ParticleConfig:
        """sigma - times * Delta(u)."""
        return self.fire(sigma, u, -times)

    def laplacian_row(self, u: int) -> ParticleConfig:
        """Delta(u) as a particle configuration."""
        return self.fire(ParticleConfig.zeros(self.graph.vertex_count), u)

    def _fire(self, values: list[int], u: int, times: int) -> None:
        values[u] -= times * self.graph.out_degree(u)
        for head in self.graph.order_heads[u]:
            values[head] += times

    def is_stable(self, sigma: ParticleConfig) -> bool:
        return all(sigma[u] < self.graph.out_degree(u) for u in self.graph.non_sinks)

    def stabilize(
        self, sigma: ParticleConfig, rng: Optional[random.Random] = None
    ) -> tuple[ParticleConfig, RoutingVector]:
        """
        Fire unstable vertices until sigma(u) < deg+(u) on every non-sink u.

        The default policy fires the lowest-indexed unstable vertex as many
        times as it is legal in one go. With ``rng`` a uniformly random
        unstable vertex fires once per step. Both reach the same result.

        Returns:
            (stable configuration, firing vector)

        Raises:
            StepBudgetExceededError: more than max_firings firings
        """
        self.graph.check_particles(sigma)
        values = list(sigma)
        firings = [0] * self.graph.vertex_count
        total = 0

        def unstable(v: int) -> bool:
            return not self.graph.is_sink(v) and values[v] >= self.graph.out_degree(v)

        if rng is not None:
            while True:
                candidates = [v for v in self.graph.non_sinks if unstable(v)]
                if not candidates:
                    break
                u = rng.choice(candidates)
                self._fire(values, u, 1)
                firings[u] += 1
                total += 1
                if total > self.max_firings:
                    self._budget_exceeded()
        else:
            heap = [v for v in self.graph.non_sinks if unstable(v)]
            heapq.heapify(heap)
            queued = set(heap)
            while heap:
                u = heapq.heappop(heap)
                queued.discard(u)
                if not unstable(u):
                    continue
                times = values[u] // self.graph.out_degree(u)
                self._fire(values, u, times)
                firings[u] += times
                total += times
                if total > self.max_firings:
                    self._budget_exceeded()
                for head in set(self.graph.order_heads[u]):
                    if head not in queued and unstable(head):
                        heapq.heappush(heap, head)
                        queued.add(head)

        logger.debug("stabilize_completed", firings=total)
        return ParticleConfig(tuple(values)), RoutingVector(tuple(firings))

    def _budget_exceeded(self) -> None:
        logger.warning("firing_budget_exceeded", budget=self.max_firings)
        raise StepBudgetExceededError(self.max_firings, "stabilize")
