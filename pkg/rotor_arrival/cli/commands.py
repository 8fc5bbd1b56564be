"""
================================================================================
FILE IDENTITY CARD
================================================================================
File Path:           rotor_arrival/cli/commands.py
Purpose:             Command-line front end: solver, oracle, digit tools,
                     certificate checking, instance generation and batch runs

Dependencies:        click>=8.1.0, structlog>=23.2.0

Related Files:       rotor_arrival/services/report_service.py (report builders)
                     rotor_arrival/services/instance_io_service.py (file formats)
                     rotor_arrival/core/exceptions.py (exit codes)
                     rotor_arrival/middleware/logging.py (run context)

Notes:               - Reports go to stdout as canonical JSON or plain lines
                     - Logs go to stderr; default level WARNING
                     - Negative integer arguments need a preceding "--"
================================================================================
"""

import sys
from pathlib import Path
from typing import Any, Callable, Optional

import click

from rotor_arrival.core.config import get_settings
from rotor_arrival.core.exceptions import EXIT_INTERNAL, SchemaError, handle_cli_errors
from rotor_arrival.middleware.logging import command_context, setup_logging
from rotor_arrival.models.engel_machine import EngelMachine
from rotor_arrival.models.path_instance import PathInstance
from rotor_arrival.schemas.instance import PathInstanceFile
from rotor_arrival.services.arrival_solver_service import ArrivalSolverService
from rotor_arrival.services.batch_service import BatchService
from rotor_arrival.services.engel_service import EngelService
from rotor_arrival.services.instance_generator import InstanceGenerator
from rotor_arrival.services.instance_io_service import (
    LoadedInstance,
    dumps,
    load_certificate,
    load_instance,
    oracle_instance_of,
    path_file_of,
    path_instance_of,
    routing_vector_of,
)
from rotor_arrival.services.report_service import (
    class_report,
    compare_run,
    oracle_report,
    solve_report,
)
from rotor_arrival.services.rotor_routing_service import RotorRoutingService

instance_option = click.option(
    "--instance",
    "instance_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Instance file (JSON).",
)


def parameter_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """--n, --x and --y of a path instance or Engel machine."""
    func = click.option("--y", "y", type=int, required=True, help="Left multiplicity.")(func)
    func = click.option("--x", "x", type=int, required=True, help="Right multiplicity.")(func)
    func = click.option("--n", "n", type=int, required=True, help="Interior vertex count.")(func)
    return func


def _parse_value(text: str) -> int:
    try:
        return int(text.strip())
    except ValueError as e:
        raise SchemaError(f"not a decimal integer: {text!r}", field="value") from e


def _load_path(instance_path: Path) -> LoadedInstance:
    file = load_instance(instance_path)
    if not isinstance(file, PathInstanceFile):
        raise SchemaError("this command needs a path-form instance (n, x, y, rotor, sigma)")
    return path_instance_of(file)


@click.group()
@click.version_option(get_settings().app_version, prog_name=get_settings().app_name)
@click.option("--log-level", default=None, help="Overrides LOG_LEVEL (default WARNING).")
@click.option(
    "--log-format",
    type=click.Choice(["console", "json"]),
    default=None,
    help="Overrides LOG_FORMAT.",
)
def cli(log_level: Optional[str], log_format: Optional[str]) -> None:
    """Rotor walks and generalized ARRIVAL on path multigraphs."""
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    setup_logging(log_level, log_format)


@cli.command()
@instance_option
@click.option("--closed-form-11", is_flag=True, help="Use the x = y = 1 closed form.")
@handle_cli_errors
def solve(instance_path: Path, closed_form_11: bool) -> None:
    """Predict sink counts and the final rotor class."""
    with command_context("solve", instance=str(instance_path)):
        report = solve_report(_load_path(instance_path), closed_form_11)
        click.echo(dumps(report), nl=False)


@cli.command()
@instance_option
@click.option("--max-steps", type=int, default=None, help="Routing step budget.")
@handle_cli_errors
def oracle(instance_path: Path, max_steps: Optional[int]) -> None:
    """Simulate the full routing and print the result with its certificate."""
    with command_context("oracle", instance=str(instance_path), max_steps=max_steps):
        report = oracle_report(oracle_instance_of(load_instance(instance_path)), max_steps)
        click.echo(dumps(report), nl=False)


@cli.command()
@parameter_options
@click.argument("value")
@handle_cli_errors
def decompose(n: int, x: int, y: int, value: str) -> None:
    """Print the stable decomposition of VALUE."""
    with command_context("decompose", n=n, x=x, y=y):
        engel = EngelService(EngelMachine.for_parameters(n, x, y))
        click.echo(str(engel.stable_decompose(_parse_value(value))))


@cli.command()
@parameter_options
@click.argument("value")
@handle_cli_errors
def member(n: int, x: int, y: int, value: str) -> None:
    """Print yes if VALUE is the arcmonic value of a rotor configuration."""
    with command_context("member", n=n, x=x, y=y):
        solver = ArrivalSolverService(PathInstance.from_parameters(n, x, y))
        click.echo("yes" if solver.membership(_parse_value(value)) else "no")


@cli.command()
@parameter_options
@click.option("--limit", type=int, default=None, help="Largest F to enumerate.")
@handle_cli_errors
def classes(n: int, x: int, y: int, limit: Optional[int]) -> None:
    """List every arcmonic value, one per line, ascending."""
    with command_context("classes", n=n, x=x, y=y):
        solver = ArrivalSolverService(PathInstance.from_parameters(n, x, y))
        for v in solver.enumerate_gR(limit):
            click.echo(str(v))


@cli.command("class-of")
@instance_option
@handle_cli_errors
def class_of(instance_path: Path) -> None:
    """Print the residues of h(sigma), g(rho) and the final rotor class modulo F."""
    with command_context("class-of", instance=str(instance_path)):
        click.echo(dumps(class_report(_load_path(instance_path))), nl=False)


@cli.command()
@instance_option
@click.option(
    "--certificate",
    "certificate_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Certificate file (routing_vector, sink_counts).",
)
@handle_cli_errors
def verify(instance_path: Path, certificate_path: Path) -> None:
    """Print yes if the certificate's routing vector fully routes the instance as claimed."""
    with command_context("verify", instance=str(instance_path), certificate=str(certificate_path)):
        loaded = oracle_instance_of(load_instance(instance_path))
        certificate = load_certificate(certificate_path)
        r = routing_vector_of(loaded.graph, certificate)
        valid = RotorRoutingService(loaded.graph).verify_certificate(
            loaded.rotor, loaded.sigma, r, certificate.sink_counts
        )
        click.echo("yes" if valid else "no")


@cli.command()
@click.option("--n", "n", type=int, default=None, help="Interior vertex count (random if omitted).")
@click.option("--x", "x", type=int, default=None)
@click.option("--y", "y", type=int, default=None)
@click.option("--seed", type=int, default=None, help="Generator seed (default DEFAULT_SEED).")
@click.option("--magnitude", type=int, default=20, show_default=True, help="Bound on |sigma(u)|.")
@handle_cli_errors
def generate(
    n: Optional[int], x: Optional[int], y: Optional[int], seed: Optional[int], magnitude: int
) -> None:
    """Print a random path-form instance."""
    with command_context("generate", seed=seed):
        given = [value is not None for value in (n, x, y)]
        if any(given) and not all(given):
            raise click.UsageError("--n, --x and --y must be given together")
        generator = InstanceGenerator(seed)
        if n is None or x is None or y is None:
            n, x, y = generator.parameters()
        path, rotor, sigma = generator.instance(n, x, y, magnitude)
        click.echo(dumps(path_file_of(path, rotor, sigma)), nl=False)


@cli.command()
@click.option("--seed", type=int, default=None, help="Generator seed (default DEFAULT_SEED).")
@click.option("--count", type=click.IntRange(min=0), default=100, show_default=True)
@click.option("--max-n", type=click.IntRange(min=1), default=5, show_default=True)
@click.option("--max-y", type=click.IntRange(min=2), default=6, show_default=True)
@click.option("--magnitude", type=int, default=20, show_default=True)
@click.option("--max-steps", type=int, default=None, help="Oracle step budget.")
@handle_cli_errors
def compare(
    seed: Optional[int],
    count: int,
    max_n: int,
    max_y: int,
    magnitude: int,
    max_steps: Optional[int],
) -> None:
    """Run solver and oracle on generated instances; exit 1 on any disagreement."""
    seed = seed if seed is not None else get_settings().default_seed
    with command_context("compare", seed=seed, count=count):
        report = compare_run(seed, count, max_n, max_y, magnitude, max_steps)
        click.echo(dumps(report), nl=False)
    if report.mismatches:
        raise SystemExit(EXIT_INTERNAL)


@cli.command()
@click.argument(
    "directory", type=click.Path(exists=True, file_okay=False, path_type=Path)
)
@click.option("--jobs", type=int, default=None, help="Worker processes (default JOBS).")
@click.option("--oracle", "use_oracle", is_flag=True, help="Simulate instead of solving.")
@click.option("--max-steps", type=int, default=None, help="Oracle step budget.")
@handle_cli_errors
def batch(directory: Path, jobs: Optional[int], use_oracle: bool, max_steps: Optional[int]) -> None:
    """One JSON report line per instance file of DIRECTORY, sorted by file name."""
    jobs = jobs or get_settings().jobs
    with command_context("batch", directory=str(directory), jobs=jobs):
        records = BatchService(jobs, use_oracle, max_steps).run(directory)
        for record in records:
            click.echo(record.to_line())
    code = BatchService.exit_code(records)
    if code:
        raise SystemExit(code)
