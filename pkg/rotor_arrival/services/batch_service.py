"""
Batch Service.

Runs the solver (or the oracle) on every ``*.json`` instance of a
directory. Instances are independent, so they are spread over a process
pool; records come back in file-name order whatever the worker count.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

import pydantic
import structlog

from rotor_arrival.core.exceptions import (
    EXIT_OK,
    ArrivalError,
    SchemaError,
    exit_code_for,
)
from rotor_arrival.schemas.instance import PathInstanceFile
from rotor_arrival.services.instance_io_service import (
    load_instance,
    oracle_instance_of,
    path_instance_of,
)
from rotor_arrival.services.report_service import oracle_report, solve_report

logger = structlog.get_logger()


@dataclass(frozen=True)
class BatchRecord:
    """Outcome for one instance file."""

    file: str
    exit_code: int
    report: Optional[dict[str, Any]] = None
    error: Optional[str] = None

    def to_line(self) -> str:
        """One compact JSON line."""
        payload: dict[str, Any] = {"file": self.file}
        if self.report is not None:
            payload.update(self.report)
        else:
            payload["error"] = self.error
            payload["exit_code"] = self.exit_code
        return json.dumps(payload, separators=(",", ":"))


def process_file(path: str, oracle: bool = False, max_steps: Optional[int] = None) -> BatchRecord:
    """Solve or simulate one instance file; errors become records."""
    name = Path(path).name
    try:
        file = load_instance(path)
        if oracle:
            report = oracle_report(oracle_instance_of(file), max_steps)
        else:
            if not isinstance(file, PathInstanceFile):
                raise SchemaError("the solver needs a path-form instance")
            report = solve_report(path_instance_of(file))
        return BatchRecord(file=name, exit_code=EXIT_OK, report=report.model_dump(mode="json", exclude_none=True))
    except (ArrivalError, pydantic.ValidationError) as e:
        message = e.message if isinstance(e, ArrivalError) else f"invalid input: {e.error_count()} validation error(s)"
        return BatchRecord(file=name, exit_code=exit_code_for(e), error=message)


class BatchService:
    """Process-pool driver over a directory of instance files."""

    def __init__(self, jobs: int = 1, oracle: bool = False, max_steps: Optional[int] = None):
        self.jobs = jobs
        self.oracle = oracle
        self.max_steps = max_steps

    def run(self, directory: Path) -> list[BatchRecord]:
        files = sorted(str(p) for p in Path(directory).glob("*.json"))
        logger.info("batch_started", files=len(files), jobs=self.jobs, oracle=self.oracle)
        if self.jobs == 1:
            records = [process_file(f, self.oracle, self.max_steps) for f in files]
        else:
            with ProcessPoolExecutor(max_workers=self.jobs) as pool:
                records = list(
                    pool.map(
                        process_file,
                        files,
                        [self.oracle] * len(files),
                        [self.max_steps] * len(files),
                    )
                )
        failed = sum(1 for r in records if r.exit_code != EXIT_OK)
        logger.info("batch_completed", files=len(records), failed=failed)
        return records

    @staticmethod
    def exit_code(records: list[BatchRecord]) -> int:
        """Exit code of the first failing file in name order, else 0."""
        return next((r.exit_code for r in records if r.exit_code != EXIT_OK), EXIT_OK)
