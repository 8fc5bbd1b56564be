"""
Instance I/O Service.

Reads path-form and general-form instance files and certificates, turns
them into domain objects, and writes canonical JSON (two-space indent,
schema field order, trailing newline).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional, Union

import structlog
from pydantic import BaseModel

from rotor_arrival.core.exceptions import ArrivalError, SchemaError
from rotor_arrival.models.multigraph import Multigraph, ParticleConfig, RotorConfig, RoutingVector
from rotor_arrival.models.path_instance import PathInstance, path_multigraph
from rotor_arrival.schemas.instance import CertificateFile, GeneralInstanceFile, PathInstanceFile

logger = structlog.get_logger()

InstanceFile = Union[PathInstanceFile, GeneralInstanceFile]


@dataclass(frozen=True)
class LoadedInstance:
    """A validated rotor/particle pair on its multigraph."""

    graph: Multigraph
    rotor: RotorConfig
    sigma: ParticleConfig
    path: Optional[PathInstance] = None  # set for solver-eligible path instances


def _read_json(source: Union[str, Path]) -> Any:
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e.strerror}", field=str(path)) from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path} is not valid JSON: {e.msg} (line {e.lineno})") from e


def parse_instance(data: Any) -> InstanceFile:
    """
    Validate decoded JSON as a path-form or general-form instance.

    The general form is recognized by its ``vertices`` field.

    Raises:
        SchemaError: not a JSON object
        pydantic.ValidationError: fields missing or malformed
    """
    if not isinstance(data, dict):
        raise SchemaError("an instance must be a JSON object")
    if "vertices" in data:
        return GeneralInstanceFile.model_validate(data)
    return PathInstanceFile.model_validate(data)


def load_instance(source: Union[str, Path]) -> InstanceFile:
    return parse_instance(_read_json(source))


def load_certificate(source: Union[str, Path]) -> CertificateFile:
    data = _read_json(source)
    if not isinstance(data, dict):
        raise SchemaError("a certificate must be a JSON object")
    return CertificateFile.model_validate(data)


def dumps(model: BaseModel) -> str:
    """Canonical JSON text of a schema object."""
    return json.dumps(model.model_dump(mode="json", exclude_none=True), indent=2) + "\n"


def path_instance_of(file: PathInstanceFile) -> LoadedInstance:
    """
    Solver input from a path-form file.

    Raises:
        InvalidInstanceError: parameters outside 0 < x < y coprime and x = y = 1
    """
    instance = PathInstance.from_parameters(file.n, file.x, file.y)
    return LoadedInstance(
        graph=instance.graph,
        rotor=instance.rotor_from_labels(file.rotor),
        sigma=instance.particles(file.sigma),
        path=instance,
    )


def oracle_instance_of(file: InstanceFile) -> LoadedInstance:
    """
    Simulation input from either form.

    Path files are accepted for any multiplicities; ``path`` is only set
    when the solver could handle the parameters too.
    """
    if isinstance(file, PathInstanceFile):
        try:
            return path_instance_of(file)
        except ArrivalError:
            graph = path_multigraph(file.n, file.x, file.y)
            return LoadedInstance(
                graph=graph,
                rotor=RotorConfig((0, *file.rotor, 0)),
                sigma=ParticleConfig.of(file.sigma),
            )

    graph = Multigraph.build(file.vertices, file.sinks, file.arcs, file.rotor_order)
    if set(file.rotor) != set(graph.non_sinks):
        raise SchemaError(
            f"rotor must list exactly the non-sink vertices {list(graph.non_sinks)}",
            field="rotor",
        )
    rotor = RotorConfig.of(file.rotor.get(v, 0) for v in range(graph.vertex_count))
    graph.check_rotor(rotor)
    return LoadedInstance(graph=graph, rotor=rotor, sigma=ParticleConfig.of(file.sigma))


def routing_vector_of(graph: Multigraph, certificate: CertificateFile) -> RoutingVector:
    """
    Dense routing vector from a certificate's vertex map.

    Raises:
        SchemaError: an entry for a sink or an unknown vertex
    """
    counts = [0] * graph.vertex_count
    for v, r in certificate.routing_vector.items():
        if not 0 <= v < graph.vertex_count or graph.is_sink(v):
            raise SchemaError(f"routing vector entry for {v}, which is not a non-sink vertex",
                              field="routing_vector")
        counts[v] = r
    return RoutingVector(tuple(counts))


def path_file_of(instance: PathInstance, rotor: RotorConfig, sigma: ParticleConfig) -> PathInstanceFile:
    return PathInstanceFile(
        n=instance.n,
        x=instance.x,
        y=instance.y,
        rotor=list(instance.labels_of(rotor)),
        sigma=list(sigma),
    )
