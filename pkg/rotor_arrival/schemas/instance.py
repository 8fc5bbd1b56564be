"""
Instance and certificate file schemas.

Particle counts and routing counts are arbitrary-precision integers and
are written as decimal strings; JSON numbers are accepted on input.
Vertex-keyed maps use the vertex id as a JSON object key.
"""

import re
from typing import Annotated, Any

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer, model_validator

_DECIMAL = re.compile(r"^[+-]?\d+$")


def _parse_big_int(value: Any) -> int:
    if isinstance(value, bool):
        raise ValueError("expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and _DECIMAL.match(value.strip()):
        return int(value.strip())
    raise ValueError(f"expected a decimal integer string, got {value!r}")


BigInt = Annotated[
    int,
    BeforeValidator(_parse_big_int),
    PlainSerializer(lambda v: str(v), return_type=str, when_used="json"),
]


class PathInstanceFile(BaseModel):
    """Path-form instance: P^{x,y}_n with rotor labels j_1..j_n and sigma on u_0..u_{n+1}."""

    model_config = ConfigDict(extra="forbid")

    n: int = Field(..., ge=0, description="Number of interior vertices")
    x: int = Field(..., ge=0, description="Right multiplicity")
    y: int = Field(..., ge=0, description="Left multiplicity")
    rotor: list[int] = Field(..., description="Arc label j_k in [0, x+y) for k = 1..n")
    sigma: list[BigInt] = Field(..., description="Particle counts on u_0..u_{n+1}")

    @model_validator(mode="after")
    def check_dimensions(self) -> "PathInstanceFile":
        if len(self.rotor) != self.n:
            raise ValueError(f"rotor has {len(self.rotor)} entries, expected n={self.n}")
        if len(self.sigma) != self.n + 2:
            raise ValueError(f"sigma has {len(self.sigma)} entries, expected n+2={self.n + 2}")
        for k, j in enumerate(self.rotor, start=1):
            if not 0 <= j < self.x + self.y:
                raise ValueError(f"rotor label {j} at u_{k} outside [0, {self.x + self.y - 1}]")
        return self


class GeneralInstanceFile(BaseModel):
    """General-form instance on any stopping multigraph."""

    model_config = ConfigDict(extra="forbid")

    vertices: int = Field(..., ge=1, description="Vertex count, ids 0..vertices-1")
    sinks: list[int]
    arcs: list[tuple[int, int]] = Field(..., description="(tail, head) per arc id")
    rotor_order: dict[int, list[int]] = Field(..., description="Out-arc ids in cyclic order")
    rotor: dict[int, int] = Field(..., description="Rotor position per non-sink vertex")
    sigma: list[BigInt]

    @model_validator(mode="after")
    def check_dimensions(self) -> "GeneralInstanceFile":
        if len(self.sigma) != self.vertices:
            raise ValueError(f"sigma has {len(self.sigma)} entries, expected {self.vertices}")
        return self


class CertificateFile(BaseModel):
    """Routing vector with the sink counts it claims to produce."""

    model_config = ConfigDict(extra="ignore")

    routing_vector: dict[int, BigInt]
    sink_counts: dict[int, BigInt]
