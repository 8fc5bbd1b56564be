"""
================================================================================
FILE IDENTITY CARD
================================================================================
File Path:           rotor_arrival/services/arrival_solver_service.py
Purpose:             Generalized ARRIVAL solver on path multigraphs P^{x,y}_n
                     Predicts the sink counts and the final rotor class of a
                     full routing without simulating it, plus the sandpile
                     and rotor-class computations built on the same invariant

Dependencies:        structlog>=23.2.0

Related Files:       rotor_arrival/services/path_invariant_service.py (h, g)
                     rotor_arrival/services/engel_service.py (window search)
                     rotor_arrival/services/rotor_routing_service.py (oracle)

Notes:               - Exactly m particles end on u_{n+1} iff
                       g(rho) - h(sigma) + mF is an arcmonic value
                     - m lies in a window of x candidates starting at
                       ceil((h(sigma) - g(rho)) / F); the window is bisected
                     - x = y = 1 has the closed form m = ceil((h - g) / (n + 1))
================================================================================
"""

from __future__ import annotations

from functools import cached_property
from typing import Optional

import structlog

from rotor_arrival.core.config import get_settings
from rotor_arrival.core.exceptions import InvalidInstanceError, SizeLimitExceededError
from rotor_arrival.models.arrival_solution import ArrivalSolution
from rotor_arrival.models.multigraph import ParticleConfig, RotorConfig
from rotor_arrival.models.path_instance import PathInstance
from rotor_arrival.services.engel_service import DecompositionWork, EngelService
from rotor_arrival.services.path_invariant_service import PathInvariantService

logger = structlog.get_logger()

Pair = tuple[RotorConfig, ParticleConfig]


class ArrivalSolverService:
    """
    ARRIVAL solver for one path instance.

    Example:
        >>> instance = PathInstance.coprime(3, 2, 3)
        >>> solver = ArrivalSolverService(instance)
        >>> rho = instance.rotor_from_labels([1, 1, 1])
        >>> solver.solve(rho, instance.particles([-8, 5, 13, -5, 12])).m_right
        13
    """

    def __init__(self, instance: PathInstance, search_mode: Optional[str] = None):
        self.instance = instance
        self.search_mode = search_mode
        self.invariants = PathInvariantService(instance)

    @cached_property
    def engel(self) -> EngelService:
        self._require_coprime()
        return EngelService.for_instance(self.instance, self.search_mode)

    def _require_coprime(self) -> None:
        inst = self.instance
        if inst.is_unit:
            raise InvalidInstanceError(
                "x = y = 1 instances use the closed form (solve_11)", n=inst.n, x=inst.x, y=inst.y
            )

    def _require_unit(self) -> None:
        inst = self.instance
        if not inst.is_unit:
            raise InvalidInstanceError(
                f"the closed form needs x = y = 1, got x={inst.x}, y={inst.y}",
                n=inst.n,
                x=inst.x,
                y=inst.y,
            )

    # ------------------------------------------------------------------ solving

    def solve(self, rotor: RotorConfig, sigma: ParticleConfig) -> ArrivalSolution:
        """
        Sink counts and final arcmonic value of fully routing (rho, sigma).

        Raises:
            InvalidInstanceError: instance is not in the coprime case 0 < x < y
        """
        self._require_coprime()
        inst = self.instance
        g = self.invariants.arcmonic_g(rotor)
        h = self.invariants.harmonic_h(sigma)

        if inst.n == 0:
            # no interior vertex: nothing moves
            return ArrivalSolution(
                m_right=sigma[1],
                m_left=sigma[0],
                final_g=0,
                final_class=0,
                F=inst.F,
                h_sigma=h,
                g_rho=g,
            )

        work = DecompositionWork()
        base = g - h
        window_start = -(base // inst.F)
        k, final_g = self.engel.unique_k_mod_F(base + window_start * inst.F, work)
        m_right = window_start + k
        solution = ArrivalSolution(
            m_right=m_right,
            m_left=sigma.degree - m_right,
            final_g=final_g,
            final_class=final_g % inst.F,
            F=inst.F,
            h_sigma=h,
            g_rho=g,
            decompositions=work.decompositions,
            digit_steps=work.digit_steps,
        )
        logger.debug(
            "solve_completed",
            n=inst.n,
            x=inst.x,
            y=inst.y,
            window_offset=k,
            decompositions=solution.decompositions,
        )
        return solution

    def solve_11(self, rotor: RotorConfig, sigma: ParticleConfig) -> ArrivalSolution:
        """
        Closed form for x = y = 1, where g counts left arcs and h(u_i) = i.

        Raises:
            InvalidInstanceError: x = y = 1 does not hold
        """
        self._require_unit()
        inst = self.instance
        g = self.invariants.arcmonic_g(rotor)
        h = self.invariants.harmonic_h(sigma)
        m_right = -((g - h) // inst.F)
        final_g = g - h + m_right * inst.F
        logger.debug("solve_11_completed", n=inst.n, m_right=m_right)
        return ArrivalSolution(
            m_right=m_right,
            m_left=sigma.degree - m_right,
            final_g=final_g,
            final_class=final_g % inst.F,
            F=inst.F,
            h_sigma=h,
            g_rho=g,
            closed_form=True,
        )

    def solve_any(self, rotor: RotorConfig, sigma: ParticleConfig) -> ArrivalSolution:
        """Dispatch to :meth:`solve_11` for x = y = 1, else :meth:`solve`."""
        if self.instance.is_unit:
            return self.solve_11(rotor, sigma)
        return self.solve(rotor, sigma)

    def check_sink_count(self, rotor: RotorConfig, sigma: ParticleConfig, m: int) -> bool:
        """Decision version: does full routing leave exactly m particles on u_{n+1}?"""
        if self.instance.n == 0:
            return sigma[1] == m
        return self.membership(self.invariants.class_value(rotor, sigma) + m * self.instance.F)

    def final_rotor(self, rotor: RotorConfig, sigma: ParticleConfig) -> RotorConfig:
        """The acyclic rotor configuration in the class every full routing of (rho, sigma) ends in."""
        solution = self.solve_any(rotor, sigma)
        if self.instance.is_unit:
            left = solution.final_g
            return self.instance.rotor_from_labels([1] * left + [0] * (self.instance.n - left))
        if self.instance.n == 0:
            return rotor
        return self.engel.acyclic_representative(solution.final_g)

    def arrival_destination(self, rotor: RotorConfig, start: int) -> int:
        """Sink reached by a single particle starting at ``start``."""
        inst = self.instance
        if inst.graph.is_sink(start):
            return start
        sigma = ParticleConfig.unit(inst.vertex_count, start)
        return inst.right_sink if self.solve_any(rotor, sigma).m_right == 1 else inst.left_sink

    # ------------------------------------------------------------------ classes

    def final_rotor_class(self, rotor: RotorConfig, sigma: ParticleConfig) -> int:
        """(g(rho) - h(sigma)) mod F."""
        return self.invariants.class_value(rotor, sigma) % self.instance.F

    def equivalent_pairs(self, first: Pair, second: Pair) -> bool:
        """Same class value and same degree: both pairs fully route to the same result."""
        (rho, sigma), (rho2, sigma2) = first, second
        return (
            self.invariants.class_value(rho, sigma) == self.invariants.class_value(rho2, sigma2)
            and sigma.degree == sigma2.degree
        )

    def sandpile_order(self) -> int:
        """F: order of the sandpile group, number of rotor classes and of acyclic configurations."""
        return self.instance.F

    def membership(self, v: int) -> bool:
        """Whether v is the arcmonic value of some rotor configuration."""
        if self.instance.is_unit:
            return 0 <= v <= self.instance.n
        return self.engel.membership_gR(v)

    def enumerate_gR(self, limit: Optional[int] = None) -> list[int]:  # noqa: N802
        """
        All arcmonic values of rotor configurations, ascending.

        Raises:
            SizeLimitExceededError: F exceeds the cap (settings.enumeration_max_f)
        """
        cap = limit if limit is not None else get_settings().enumeration_max_f
        if self.instance.F > cap:
            raise SizeLimitExceededError(self.instance.F, cap)
        return [v for v in range(self.instance.max_g + 1) if self.membership(v)]
