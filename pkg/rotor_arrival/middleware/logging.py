"""
================================================================================
FILE IDENTITY CARD
================================================================================
File Path:           rotor_arrival/middleware/logging.py
Purpose:             Structured logging configuration with run IDs
                     Provides JSON or console logging on stderr and the
                     per-command logging context used by the CLI

Dependencies:        structlog>=23.2.0

Related Files:       rotor_arrival/cli/commands.py (logging setup, command context)
                     rotor_arrival/core/config.py (log level, format settings)

Notes:               - JSON format for machine consumption
                     - Console format for interactive use
                     - Run IDs bound through contextvars for every command
                     - stdout is reserved for reports, logs go to stderr
================================================================================
"""

import logging
import sys
import time
import uuid
from contextlib import contextmanager
from typing import Any, Iterator, Optional

import structlog

from rotor_arrival.core.config import get_settings


def setup_logging(log_level: Optional[str] = None, log_format: Optional[str] = None) -> None:
    """
    Configure structured logging.

    Sets up structlog with:
    - JSON format or console format, from settings unless overridden
    - Run IDs merged from contextvars
    - Timestamp in ISO format
    - Log level filtering

    Args:
        log_level: Overrides settings.log_level
        log_format: Overrides settings.log_format
    """
    settings = get_settings()
    level_name = (log_level or settings.log_level).upper()
    level = getattr(logging, level_name, logging.WARNING)

    processors: list[Any] = [
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
        structlog.processors.StackInfoRenderer(),
        structlog.processors.TimeStamper(fmt="iso"),
    ]

    if (log_format or settings.log_format) == "json":
        processors.append(structlog.processors.format_exc_info)
        processors.append(structlog.processors.JSONRenderer())
    else:
        processors.append(structlog.dev.ConsoleRenderer(colors=sys.stderr.isatty()))

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.make_filtering_bound_logger(level),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )

    logging.basicConfig(format="%(message)s", stream=sys.stderr, level=level)


@contextmanager
def command_context(command: str, **fields: Any) -> Iterator[Any]:
    """
    Bind a run ID and the command name for the duration of one CLI command.

    Logs command start, completion with duration, and failures.

    Args:
        command: Command name
        **fields: Extra context (instance path, seed, ...)

    Yields:
        Logger bound to the command context
    """
    run_id = str(uuid.uuid4())
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(run_id=run_id, command=command, **fields)
    logger = structlog.get_logger()

    logger.info("command_started")
    start_time = time.perf_counter()
    try:
        yield logger
        logger.info(
            "command_completed",
            duration_ms=round((time.perf_counter() - start_time) * 1000, 2),
        )
    except Exception as e:
        logger.error(
            "command_failed",
            error=str(e),
            error_type=type(e).__name__,
            duration_ms=round((time.perf_counter() - start_time) * 1000, 2),
        )
        raise
    finally:
        structlog.contextvars.clear_contextvars()
