"""
================================================================================
FILE IDENTITY CARD
================================================================================
File Path:           rotor_arrival/core/exceptions.py
Purpose:             Exception hierarchy for the rotor-routing engine, the path
                     invariants, the Engel digit machinery and the solver,
                     plus the CLI error handler mapping errors to exit codes

Dependencies:        structlog>=23.2.0, pydantic>=2.5.0, click>=8.1.0

Related Files:       rotor_arrival/cli/commands.py (installs the handler)
                     rotor_arrival/services/*.py (raise these exceptions)
                     rotor_arrival/middleware/logging.py (run ids in context)

Notes:               - Exit codes: 0 ok, 1 internal, 2 malformed input,
                       3 invalid instance, 4 budget refusal
                     - Every exception keeps its offending values as
                       attributes so the handler can log them structurally
================================================================================
"""

import functools
from typing import Any, Callable, Dict, Optional, TypeVar

import click
import pydantic
import structlog

logger = structlog.get_logger()

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_SCHEMA = 2
EXIT_INVALID_INSTANCE = 3
EXIT_BUDGET = 4


class ArrivalError(Exception):
    """Base class of every error raised by rotor_arrival."""

    exit_code: int = EXIT_SCHEMA
    error: str = "arrival_error"

    def __init__(self, message: str, **details: Any):
        self.message = message
        self.details: Dict[str, Any] = details
        super().__init__(self.message)


# Multigraph construction
class InvalidMultigraphError(ArrivalError):
    """Raised when a multigraph description is inconsistent."""

    error = "invalid_multigraph"


class NonStoppingError(InvalidMultigraphError):
    """Raised when some vertex has no directed path to a sink."""

    error = "non_stopping"

    def __init__(self, vertices: list[int]):
        self.vertices = vertices
        super().__init__(
            f"vertices {vertices} cannot reach a sink", vertices=vertices
        )


class SinkWithOutArcError(InvalidMultigraphError):
    """Raised when a vertex declared as sink has outgoing arcs."""

    error = "sink_with_out_arc"

    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"sink {vertex} has outgoing arcs", vertex=vertex)


class EmptyRotorOrderError(InvalidMultigraphError):
    """Raised when a non-sink vertex has no outgoing arc in its rotor order."""

    error = "empty_rotor_order"

    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"non-sink vertex {vertex} has an empty rotor order", vertex=vertex)


# Operator preconditions
class SinkVertexError(ArrivalError):
    """Raised when an operator that needs a non-sink vertex receives a sink."""

    error = "sink_vertex"

    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} is a sink", vertex=vertex)


class NegativeInputError(ArrivalError):
    """Raised when legal routing receives a negative count on a non-sink vertex."""

    error = "negative_input"

    def __init__(self, vertex: int, value: int):
        self.vertex = vertex
        self.value = value
        super().__init__(
            f"sigma({vertex}) = {value} is negative on a non-sink vertex",
            vertex=vertex,
            value=str(value),
        )


class NotACircuitError(ArrivalError):
    """Raised when a cycle push receives a vertex list that is not a circuit."""

    error = "not_a_circuit"

    def __init__(self, circuit: list[int], reason: str):
        self.circuit = circuit
        super().__init__(f"{circuit} is not a circuit: {reason}", circuit=circuit)


class DimensionMismatchError(ArrivalError):
    """Raised when a configuration does not have one entry per vertex."""

    error = "dimension_mismatch"

    def __init__(self, expected: int, actual: int, what: str = "configuration"):
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"{what} has {actual} entries, expected {expected}",
            expected=expected,
            actual=actual,
        )


class IndexOutOfRangeError(ArrivalError):
    """Raised when a vertex, arc or rotor position index is out of range."""

    error = "index_out_of_range"

    def __init__(self, what: str, index: int, low: int, high: int):
        self.index = index
        super().__init__(
            f"{what} index {index} outside [{low}, {high}]", what=what, index=index
        )


class InvalidInstanceError(ArrivalError):
    """Raised when path parameters are outside the solver's coprime case."""

    exit_code = EXIT_INVALID_INSTANCE
    error = "invalid_instance"

    def __init__(self, message: str, n: Optional[int] = None, x: Optional[int] = None,
                 y: Optional[int] = None):
        super().__init__(message, n=n, x=x, y=y)


# Digit machinery
class NonIntegralValueError(ArrivalError):
    """Raised when h_E is asked for a word whose last digit is not in xZ."""

    error = "non_integral_value"

    def __init__(self, last_digit: int, x: int):
        super().__init__(
            f"last digit {last_digit} is not a multiple of x={x}",
            last_digit=str(last_digit),
            x=x,
        )


class SymbolOutOfRangeError(ArrivalError):
    """Raised when the transducer reads a symbol outside its alphabet."""

    error = "symbol_out_of_range"

    def __init__(self, position: int, symbol: int, low: int, high: int):
        self.position = position
        self.symbol = symbol
        super().__init__(
            f"symbol {symbol} at position {position} outside [{low}, {high}]",
            position=position,
            symbol=str(symbol),
        )


class NotAcyclicError(ArrivalError):
    """Raised when psi receives a rotor configuration with a circuit."""

    error = "not_acyclic"

    def __init__(self, circuit: list[int]):
        self.circuit = circuit
        super().__init__(f"rotor configuration has circuit {circuit}", circuit=circuit)


class NotInLaError(ArrivalError):
    """Raised when psi_inv receives a word outside L_a."""

    error = "not_in_la"

    def __init__(self, word: tuple[int, ...]):
        self.word = word
        super().__init__(f"word {word} is not matched by e_a", word=[str(c) for c in word])


class NotAnArcmonicValueError(ArrivalError):
    """Raised when no rotor configuration has the requested arcmonic value."""

    error = "not_an_arcmonic_value"

    def __init__(self, value: int):
        self.value = value
        super().__init__(f"{value} is not the arcmonic value of any rotor configuration",
                         value=str(value))


# Resource refusals
class SizeLimitExceededError(ArrivalError):
    """Raised when an enumeration would exceed the configured cap."""

    exit_code = EXIT_BUDGET
    error = "size_limit_exceeded"

    def __init__(self, size: int, limit: int):
        super().__init__(f"size {size} exceeds limit {limit}", size=str(size), limit=limit)


class StepBudgetExceededError(ArrivalError):
    """Raised when the simulation oracle exceeds its step budget."""

    exit_code = EXIT_BUDGET
    error = "step_budget_exceeded"

    def __init__(self, budget: int, phase: str):
        self.budget = budget
        self.phase = phase
        super().__init__(f"{phase} exceeded the step budget of {budget}", budget=budget,
                         phase=phase)


class SchemaError(ArrivalError):
    """Raised when an instance or certificate file is malformed."""

    error = "schema_error"

    def __init__(self, message: str, field: Optional[str] = None):
        self.field = field
        super().__init__(message, field=field)


class InvariantViolationError(ArrivalError):
    """Raised when a self-check of the solver fails."""

    exit_code = EXIT_INTERNAL
    error = "invariant_violation"


CommandT = TypeVar("CommandT", bound=Callable[..., Any])


def exit_code_for(exc: BaseException) -> int:
    """
    Map an exception to the CLI exit code.

    Args:
        exc: Raised exception

    Returns:
        int: Process exit code
    """
    if isinstance(exc, ArrivalError):
        return exc.exit_code
    if isinstance(exc, pydantic.ValidationError):
        return EXIT_SCHEMA
    return EXIT_INTERNAL


def handle_cli_errors(command: CommandT) -> CommandT:
    """
    Wrap a click command so library errors become exit codes.

    Errors are logged with their structured details and echoed as a single
    ``error: ...`` line on stderr.
    """

    @functools.wraps(command)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return command(*args, **kwargs)
        except ArrivalError as exc:
            log = logger.error if exc.exit_code == EXIT_INTERNAL else logger.warning
            log(exc.error, message=exc.message, **exc.details)
            click.echo(f"error: {exc.message}", err=True)
            raise SystemExit(exc.exit_code) from exc
        except pydantic.ValidationError as exc:
            logger.warning("schema_error", errors=exc.errors(include_url=False))
            click.echo(f"error: invalid input: {exc.error_count()} validation error(s)", err=True)
            for err in exc.errors(include_url=False):
                location = ".".join(str(part) for part in err["loc"])
                click.echo(f"  {location}: {err['msg']}", err=True)
            raise SystemExit(EXIT_SCHEMA) from exc
        except (click.ClickException, click.exceptions.Exit, SystemExit):
            raise
        except Exception as exc:
            logger.error(
                "unhandled_exception",
                error=str(exc),
                error_type=type(exc).__name__,
                exc_info=True,
            )
            click.echo(f"error: unexpected {type(exc).__name__}: {exc}", err=True)
            raise SystemExit(EXIT_INTERNAL) from exc

    return wrapper  # type: ignore[return-value]
