"""
Rotor Routing Service.

General rotor-routing engine on stopping multigraphs, used as the
brute-force oracle for the path solver and as the certificate checker:

- routing+ / routing- at a single vertex (move-and-turn convention)
- routing vectors applied in closed form
- maximal legal routing of nonnegative configurations
- full routing of arbitrary configurations (particles, then antiparticles)
- cycle pushes and circuit detection in G(rho)
- certificate verification

All operations are pure: they take configurations and return new ones.
"""

from __future__ import annotations

import heapq
import random
from typing import Mapping, Optional, Sequence

import structlog

from rotor_arrival.core.config import get_settings
from rotor_arrival.core.exceptions import (
    DimensionMismatchError,
    NegativeInputError,
    NotACircuitError,
    StepBudgetExceededError,
)
from rotor_arrival.models.multigraph import (
    Multigraph,
    ParticleConfig,
    RotorConfig,
    RoutingVector,
)

logger = structlog.get_logger()

RoutingResult = tuple[RotorConfig, ParticleConfig, RoutingVector]


class RotorRoutingService:
    """Rotor routing on one multigraph."""

    def __init__(self, graph: Multigraph, max_steps: Optional[int] = None):
        """
        Initialize rotor routing service.

        Args:
            graph: Validated stopping multigraph
            max_steps: Step budget for legal and full routing
                (defaults to settings.oracle_max_steps)
        """
        self.graph = graph
        self.max_steps = max_steps if max_steps is not None else get_settings().oracle_max_steps

    # ------------------------------------------------------------------ single steps

    def routing_plus(
        self, rotor: RotorConfig, sigma: ParticleConfig, u: int
    ) -> tuple[RotorConfig, ParticleConfig]:
        """
        Move one particle along rho(u), then advance the rotor at u.

        sigma(u) may be or become negative; no legality is required.

        Raises:
            SinkVertexError: u is a sink
        """
        self.graph.require_non_sink(u)
        self._check(rotor, sigma)
        positions, values = list(rotor), list(sigma)
        self._step_plus(positions, values, u)
        return RotorConfig(tuple(positions)), ParticleConfig(tuple(values))

    def routing_minus(
        self, rotor: RotorConfig, sigma: ParticleConfig, u: int
    ) -> tuple[RotorConfig, ParticleConfig]:
        """
        Inverse of :meth:`routing_plus`: retract the rotor at u, then pull one
        particle back from the head of the retracted arc.

        Raises:
            SinkVertexError: u is a sink
        """
        self.graph.require_non_sink(u)
        self._check(rotor, sigma)
        positions, values = list(rotor), list(sigma)
        self._step_minus(positions, values, u)
        return RotorConfig(tuple(positions)), ParticleConfig(tuple(values))

    def _step_plus(self, positions: list[int], values: list[int], u: int) -> int:
        p = positions[u]
        head = self.graph.order_heads[u][p]
        values[u] -= 1
        values[head] += 1
        positions[u] = (p + 1) % len(self.graph.rotor_order[u])
        return head

    def _step_minus(self, positions: list[int], values: list[int], u: int) -> int:
        p = (positions[u] - 1) % len(self.graph.rotor_order[u])
        head = self.graph.order_heads[u][p]
        positions[u] = p
        values[u] += 1
        values[head] -= 1
        return head

    # ------------------------------------------------------------------ routing vectors

    def apply_routing_vector(
        self, rotor: RotorConfig, sigma: ParticleConfig, r: RoutingVector
    ) -> tuple[RotorConfig, ParticleConfig]:
        """
        Apply routing^r: |r(u)| routings (positive or negative) at every u.

        The operators commute, so the result is computed per vertex in
        closed form: r(u) consecutive arcs of the rotor order are used, each
        full turn sending one particle along every out-arc.
        """
        self._check(rotor, sigma)
        self.graph.check_routing_vector(r)
        positions, values = list(rotor), list(sigma)
        for u in self.graph.non_sinks:
            count = r[u]
            if count == 0:
                continue
            degree = self.graph.out_degree(u)
            heads = self.graph.order_heads[u]
            start = positions[u] if count > 0 else (positions[u] + count) % degree
            sign = 1 if count > 0 else -1
            full_turns, remainder = divmod(abs(count), degree)
            for i, head in enumerate(heads):
                used = full_turns + (1 if (i - start) % degree < remainder else 0)
                values[head] += sign * used
            values[u] -= count
            positions[u] = (positions[u] + count) % degree
        return RotorConfig(tuple(positions)), ParticleConfig(tuple(values))

    # ------------------------------------------------------------------ legal and full routing

    def legal_route_to_sinks(
        self,
        rotor: RotorConfig,
        sigma: ParticleConfig,
        rng: Optional[random.Random] = None,
    ) -> RoutingResult:
        """
        Maximal legal routing of a configuration that is nonnegative on V0.

        Routes a particle from the lowest-indexed non-sink vertex holding one
        until none is left, or from a uniformly random such vertex when
        ``rng`` is given. The result does not depend on the schedule.

        Raises:
            NegativeInputError: sigma(u) < 0 on some non-sink u
            StepBudgetExceededError: more than max_steps routings
        """
        self._check(rotor, sigma)
        for u in self.graph.non_sinks:
            if sigma[u] < 0:
                raise NegativeInputError(u, sigma[u])
        positions, values = list(rotor), list(sigma)
        counts = [0] * self.graph.vertex_count
        steps = self._run_phase(positions, values, counts, True, rng, self.max_steps, "legal_routing")
        logger.debug("legal_routing_completed", steps=steps)
        return RotorConfig(tuple(positions)), ParticleConfig(tuple(values)), RoutingVector(tuple(counts))

    def full_route(
        self,
        rotor: RotorConfig,
        sigma: ParticleConfig,
        rng: Optional[random.Random] = None,
    ) -> RoutingResult:
        """
        Route any (rho, sigma) until no particle or antiparticle is left on V0.

        Phase 1 routes particles legally. Phase 2 routes antiparticles with
        routing- wherever sigma(u) < 0; it never creates positive counts on
        V0, and it is a legal rotor walk under the inverse rotor order, so it
        terminates on a stopping graph.

        Raises:
            StepBudgetExceededError: both phases together exceed max_steps
        """
        self._check(rotor, sigma)
        positions, values = list(rotor), list(sigma)
        counts = [0] * self.graph.vertex_count
        particle_steps = self._run_phase(
            positions, values, counts, True, rng, self.max_steps, "full_route_particles"
        )
        antiparticle_steps = self._run_phase(
            positions,
            values,
            counts,
            False,
            rng,
            self.max_steps - particle_steps,
            "full_route_antiparticles",
        )
        logger.debug(
            "full_route_completed",
            particle_steps=particle_steps,
            antiparticle_steps=antiparticle_steps,
        )
        return RotorConfig(tuple(positions)), ParticleConfig(tuple(values)), RoutingVector(tuple(counts))

    def route_single_particle(
        self, rotor: RotorConfig, start: int
    ) -> tuple[int, RotorConfig, RoutingVector]:
        """
        The original ARRIVAL question: the sink reached by one particle from ``start``.

        Returns:
            (sink, final rotor configuration, routing vector)
        """
        sigma = ParticleConfig.unit(self.graph.vertex_count, start)
        if self.graph.is_sink(start):
            return start, rotor, RoutingVector.zeros(self.graph.vertex_count)
        final_rotor, final_sigma, r = self.legal_route_to_sinks(rotor, sigma)
        sink = next(s for s in sorted(self.graph.sinks) if final_sigma[s] == 1)
        return sink, final_rotor, r

    def _run_phase(
        self,
        positions: list[int],
        values: list[int],
        counts: list[int],
        positive: bool,
        rng: Optional[random.Random],
        budget: int,
        phase: str,
    ) -> int:
        """Route while some non-sink vertex has a positive (resp. negative) count."""
        sinks = self.graph.sinks
        step = self._step_plus if positive else self._step_minus
        delta = 1 if positive else -1

        def eligible(v: int) -> bool:
            if v in sinks:
                return False
            return values[v] > 0 if positive else values[v] < 0

        steps = 0
        if rng is not None:
            while True:
                candidates = [v for v in self.graph.non_sinks if eligible(v)]
                if not candidates:
                    return steps
                if steps >= budget:
                    self._budget_exceeded(phase)
                u = rng.choice(candidates)
                step(positions, values, u)
                counts[u] += delta
                steps += 1

        heap = [v for v in self.graph.non_sinks if eligible(v)]
        heapq.heapify(heap)
        queued = set(heap)
        while heap:
            u = heap[0]
            if not eligible(u):
                heapq.heappop(heap)
                queued.discard(u)
                continue
            if steps >= budget:
                self._budget_exceeded(phase)
            head = step(positions, values, u)
            counts[u] += delta
            steps += 1
            if head not in queued and eligible(head):
                heapq.heappush(heap, head)
                queued.add(head)
        return steps

    def _budget_exceeded(self, phase: str) -> None:
        logger.warning("step_budget_exceeded", phase=phase, budget=self.max_steps)
        raise StepBudgetExceededError(self.max_steps, phase)

    # ------------------------------------------------------------------ cycle pushes

    def find_circuits(self, rotor: RotorConfig) -> list[list[int]]:
        """
        All directed circuits of G(rho).

        G(rho) has outdegree one on V0 and zero on sinks, so its circuits are
        disjoint. Each is listed once, starting from its lowest vertex.
        """
        self.graph.check_rotor(rotor)
        state = [0] * self.graph.vertex_count  # 0 new, 1 on current walk, 2 done
        circuits: list[list[int]] = []
        for start in self.graph.non_sinks:
            if state[start]:
                continue
            walk: list[int] = []
            v = start
            while not self.graph.is_sink(v) and state[v] == 0:
                state[v] = 1
                walk.append(v)
                v = self.graph.order_heads[v][rotor[v]]
            if not self.graph.is_sink(v) and state[v] == 1:
                circuit = walk[walk.index(v):]
                lowest = circuit.index(min(circuit))
                circuits.append(circuit[lowest:] + circuit[:lowest])
            for w in walk:
                state[w] = 2
        return sorted(circuits)

    def find_circuit(self, rotor: RotorConfig) -> Optional[list[int]]:
        """A directed circuit of G(rho), or None when rho is acyclic."""
        circuits = self.find_circuits(rotor)
        return circuits[0] if circuits else None

    def is_acyclic(self, rotor: RotorConfig) -> bool:
        return self.find_circuit(rotor) is None

    def cycle_push(
        self, rotor: RotorConfig, circuit: Sequence[int], positive: bool = True
    ) -> RotorConfig:
        """
        Advance (positive) or retract (negative) every rotor on a circuit.

        A positive push needs a circuit of G(rho); a negative push needs a
        circuit of G(theta^-1 o rho).

        Raises:
            NotACircuitError: the vertex list is not such a circuit
        """
        self.graph.check_rotor(rotor)
        vertices = list(circuit)
        if not vertices:
            raise NotACircuitError(vertices, "empty vertex list")
        if len(set(vertices)) != len(vertices):
            raise NotACircuitError(vertices, "repeated vertex")
        positions = list(rotor)
        for i, v in enumerate(vertices):
            if not 0 <= v < self.graph.vertex_count or self.graph.is_sink(v):
                raise NotACircuitError(vertices, f"{v} is not a non-sink vertex")
            degree = self.graph.out_degree(v)
            p = rotor[v] if positive else (rotor[v] - 1) % degree
            successor = vertices[(i + 1) % len(vertices)]
            if self.graph.order_heads[v][p] != successor:
                raise NotACircuitError(vertices, f"no rotor arc from {v} to {successor}")
            positions[v] = (rotor[v] + (1 if positive else -1)) % degree
        return RotorConfig(tuple(positions))

    def circuit_routing_vector(self, circuit: Sequence[int]) -> RoutingVector:
        """r_C: one routing at every vertex of the circuit."""
        counts = [0] * self.graph.vertex_count
        for v in circuit:
            counts[v] = 1
        return RoutingVector(tuple(counts))

    # ------------------------------------------------------------------ certificates

    def verify_certificate(
        self,
        rotor: RotorConfig,
        sigma: ParticleConfig,
        r: RoutingVector,
        claimed: Mapping[int, int],
    ) -> bool:
        """
        Check a routing vector as a certificate for claimed sink counts.

        True iff routing^r(rho, sigma) has no particle on V0 and exactly the
        claimed counts on every sink.
        """
        try:
            _, final_sigma = self.apply_routing_vector(rotor, sigma, r)
        except DimensionMismatchError:
            return False
        if any(final_sigma[u] != 0 for u in self.graph.non_sinks):
            return False
        return all(claimed.get(s) == final_sigma[s] for s in self.graph.sinks)

    def _check(self, rotor: RotorConfig, sigma: ParticleConfig) -> None:
        self.graph.check_rotor(rotor)
        self.graph.check_particles(sigma)
