# etech/bench/writer.py
"""CSV output for sweeps and trajectories.

Files are written to a temporary sibling first and moved into place once
complete, so a failed run never leaves a truncated CSV behind.
"""

from __future__ import annotations

import contextlib
import csv
import logging
import math
import os
import shutil
import tempfile
from typing import Callable, Iterable, Sequence, TextIO

from ..core.exceptions import OutputError
from ..core.models import TrajectoryRow
from .sweep import SweepResult

logger = logging.getLogger(__name__)

SWEEP_HEADER = ("epsilon", "policy", "param", "transmission_time", "events")
TRAJECTORY_HEADER = ("t", "e", "q", "p", "event")
CUTOFF_TOKEN = "INF"


def format_number(value: float, precision: int = 10) -> str:
    """Shortest decimal with the given significant digits, INF for infinity."""
    if math.isinf(value):
        return CUTOFF_TOKEN
    return f"{value:.{precision}g}"


def write_atomic(path: str, write: Callable[[TextIO], None]) -> None:
    """Write a text file through a temporary sibling.

    Args:
        path: Destination file
        write: Callback that writes the content

    Raises:
        OutputError: If the file cannot be written
    """
    target_dir = os.path.dirname(os.path.abspath(path))
    temp_name = None
    try:
        os.makedirs(target_dir, exist_ok=True)
        with tempfile.NamedTemporaryFile(
            mode="w",
            dir=target_dir,
            suffix=".tmp",
            delete=False,
            encoding="utf-8",
            newline="",
        ) as temp_file:
            temp_name = temp_file.name
            logger.debug("Created temporary file: %s", temp_name)
            write(temp_file)
            temp_file.flush()
            os.fsync(temp_file.fileno())
        shutil.move(temp_name, path)
        temp_name = None
    except OSError as e:
        logger.error("Failed to write %s: %s", path, e)
        raise OutputError(f"Failed to write {path}: {e}") from e
    finally:
        if temp_name is not None:
            with contextlib.suppress(OSError):
                os.unlink(temp_name)


def sweep_rows(result: SweepResult, precision: int = 10) -> Iterable[Sequence[str]]:
    """CSV rows of a sweep result, sorted by (epsilon, policy, param)."""
    ordered = sorted(result.rows, key=lambda r: (r.epsilon, r.policy, r.param))
    for row in ordered:
        yield (
            format_number(row.epsilon, precision),
            row.policy,
            format_number(row.param, precision),
            format_number(row.transmission_time, precision),
            str(row.events),
        )


def emit_csv(result: SweepResult, path: str, precision: int = 10) -> None:
    """Write a sweep result as CSV; cutoff cells are written as INF.

    Raises:
        OutputError: If the file cannot be written
    """

    def write(out: TextIO) -> None:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(SWEEP_HEADER)
        writer.writerows(sweep_rows(result, precision))

    write_atomic(path, write)
    logger.info("Wrote %d rows to %s", len(result.rows), path)


def emit_trajectory_csv(
    rows: Sequence[TrajectoryRow], path: str, decimals: int = 9
) -> None:
    """Write trajectory samples with fixed-precision decimals.

    Raises:
        OutputError: If the file cannot be written
    """

    def write(out: TextIO) -> None:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(TRAJECTORY_HEADER)
        for row in rows:
            writer.writerow(
                (
                    f"{row.t:.{decimals}f}",
                    f"{row.e:.{decimals}f}",
                    f"{row.q:.{decimals}f}",
                    f"{row.p:.{decimals}f}",
                    str(row.event),
                )
            )

    write_atomic(path, write)
    logger.info("Wrote %d trajectory rows to %s", len(rows), path)
