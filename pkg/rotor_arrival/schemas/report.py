"""Machine-readable command reports. Integers are decimal strings."""

from typing import Optional

from pydantic import BaseModel, Field

from rotor_arrival.models.arrival_solution import ArrivalSolution
from rotor_arrival.schemas.instance import BigInt


class SolutionReport(BaseModel):
    """Solver result in fixed field order."""

    m_right: BigInt
    m_left: BigInt
    final_g: BigInt
    final_class: BigInt
    F: BigInt  # noqa: N815
    h_sigma: BigInt
    g_rho: BigInt

    @classmethod
    def from_solution(cls, solution: ArrivalSolution) -> "SolutionReport":
        return cls(
            m_right=solution.m_right,
            m_left=solution.m_left,
            final_g=solution.final_g,
            final_class=solution.final_class,
            F=solution.F,
            h_sigma=solution.h_sigma,
            g_rho=solution.g_rho,
        )


class OracleReport(BaseModel):
    """
    Simulated full routing with its certificate.

    ``routing_vector`` and ``sink_counts`` form a certificate accepted by
    ``verify``. The path-only fields are omitted for general instances.
    """

    sink_counts: dict[int, BigInt]
    routing_vector: dict[int, BigInt]
    final_rotor: dict[int, int]
    steps: BigInt = Field(..., description="Routing operations performed (l1 norm of r)")
    m_right: Optional[BigInt] = None
    m_left: Optional[BigInt] = None
    final_g: Optional[BigInt] = None


class ClassReport(BaseModel):
    """Residues of an instance in Z/FZ."""

    F: BigInt  # noqa: N815
    h_class: BigInt
    g_class: BigInt
    final_class: BigInt


class CompareReport(BaseModel):
    """Differential run of the solver against the oracle."""

    seed: int
    count: int
    agreed: int
    mismatches: list[int] = Field(default_factory=list, description="Indices of disagreeing instances")
