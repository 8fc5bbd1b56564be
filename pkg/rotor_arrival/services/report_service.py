"""
Report Service.

Builds the command reports from loaded instances: solver reports, oracle
runs with certificates, class residues and solver-versus-oracle comparisons.
"""

from __future__ import annotations

from typing import Optional

import structlog

from rotor_arrival.core.exceptions import InvalidInstanceError
from rotor_arrival.schemas.report import ClassReport, CompareReport, OracleReport, SolutionReport
from rotor_arrival.services.arrival_solver_service import ArrivalSolverService
from rotor_arrival.services.instance_generator import InstanceGenerator
from rotor_arrival.services.instance_io_service import LoadedInstance
from rotor_arrival.services.path_invariant_service import PathInvariantService
from rotor_arrival.services.rotor_routing_service import RotorRoutingService

logger = structlog.get_logger()


def solve_report(loaded: LoadedInstance, closed_form_11: bool = False) -> SolutionReport:
    """
    Run the solver on a path instance.

    x = y = 1 instances always take the closed form; ``closed_form_11``
    insists on it and refuses other parameters.

    Raises:
        InvalidInstanceError: not a solver instance, or closed form requested for x, y != 1
    """
    if loaded.path is None:
        raise InvalidInstanceError("the solver needs a path-form instance")
    solver = ArrivalSolverService(loaded.path)
    if closed_form_11:
        solution = solver.solve_11(loaded.rotor, loaded.sigma)
    else:
        solution = solver.solve_any(loaded.rotor, loaded.sigma)
    return SolutionReport.from_solution(solution)


def oracle_report(loaded: LoadedInstance, max_steps: Optional[int] = None) -> OracleReport:
    """
    Simulate a full routing and report it with its certificate.

    Raises:
        StepBudgetExceededError: the simulation needs more than max_steps routings
    """
    graph = loaded.graph
    router = RotorRoutingService(graph, max_steps)
    final_rotor, final_sigma, r = router.full_route(loaded.rotor, loaded.sigma)
    report = OracleReport(
        sink_counts={s: final_sigma[s] for s in sorted(graph.sinks)},
        routing_vector={v: r[v] for v in graph.non_sinks},
        final_rotor={v: final_rotor[v] for v in graph.non_sinks},
        steps=r.l1_norm,
    )
    if loaded.path is not None:
        path = loaded.path
        report.m_right = final_sigma[path.right_sink]
        report.m_left = final_sigma[path.left_sink]
        report.final_g = PathInvariantService(path).arcmonic_g(final_rotor)
    return report


def class_report(loaded: LoadedInstance) -> ClassReport:
    if loaded.path is None:
        raise InvalidInstanceError("class residues need a path-form instance")
    invariants = PathInvariantService(loaded.path)
    return ClassReport(
        F=loaded.path.F,
        h_class=invariants.sandpile_class(loaded.sigma),
        g_class=invariants.rotor_class(loaded.rotor),
        final_class=ArrivalSolverService(loaded.path).final_rotor_class(loaded.rotor, loaded.sigma),
    )


def compare_run(
    seed: int,
    count: int,
    max_n: int = 5,
    max_y: int = 6,
    magnitude: int = 20,
    max_steps: Optional[int] = None,
) -> CompareReport:
    """Solve ``count`` generated instances both ways and list the disagreements."""
    generator = InstanceGenerator(seed)
    mismatches: list[int] = []
    for index in range(count):
        path, rotor, sigma = generator.random_instance(max_n, max_y, magnitude)
        loaded = LoadedInstance(graph=path.graph, rotor=rotor, sigma=sigma, path=path)
        predicted = solve_report(loaded)
        simulated = oracle_report(loaded, max_steps)
        if (predicted.m_right, predicted.m_left, predicted.final_g) != (
            simulated.m_right,
            simulated.m_left,
            simulated.final_g,
        ):
            logger.warning(
                "solver_oracle_mismatch",
                index=index,
                n=path.n,
                x=path.x,
                y=path.y,
                predicted=predicted.m_right,
                simulated=simulated.m_right,
            )
            mismatches.append(index)
    return CompareReport(seed=seed, count=count, agreed=count - len(mismatches), mismatches=mismatches)
