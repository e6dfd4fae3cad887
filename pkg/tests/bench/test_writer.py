"""Test suite for CSV output."""

import math
import os
from pathlib import Path

import pytest

from etech.bench.sweep import SweepResult, SweepRow
from etech.bench.writer import (
    emit_csv,
    emit_trajectory_csv,
    format_number,
    write_atomic,
)
from etech.core.exceptions import OutputError
from etech.core.models import TrajectoryRow

HEADER = "epsilon,policy,param,transmission_time,events"


def test_format_number() -> None:
    """Test number rendering and the cutoff token."""
    assert format_number(0.05) == "0.05"
    assert format_number(1.0) == "1"
    assert format_number(1 / 3, precision=4) == "0.3333"
    assert format_number(math.inf) == "INF"


def test_emit_csv_empty(tmp_path: Path) -> None:
    """Test that an empty result writes the header only."""
    path = tmp_path / "empty.csv"
    emit_csv(SweepResult(), str(path))
    assert path.read_text() == HEADER + "\n"


def test_emit_csv_single_cell(tmp_path: Path) -> None:
    """Test a one-cell result."""
    path = tmp_path / "one.csv"
    emit_csv(SweepResult([SweepRow(0.05, "robust", 0.5, 0.75, 4)]), str(path))
    assert path.read_text().splitlines() == [HEADER, "0.05,robust,0.5,0.75,4"]


def test_emit_csv_sorts_and_marks_cutoff(tmp_path: Path) -> None:
    """Test row order and the INF token."""
    result = SweepResult(
        [
            SweepRow(0.2, "robust", 0.0, 1.0, 1),
            SweepRow(0.05, "robust", 1.0, 0.5, 3),
            SweepRow(0.05, "greedy", 0.0, math.inf, 1),
            SweepRow(0.05, "robust", 0.0, 1.0, 1),
        ]
    )
    path = tmp_path / "nested" / "sweep.csv"
    emit_csv(result, str(path))
    assert path.read_text().splitlines() == [
        HEADER,
        "0.05,greedy,0,INF,1",
        "0.05,robust,0,1,1",
        "0.05,robust,1,0.5,3",
        "0.2,robust,0,1,1",
    ]


def test_emit_csv_is_byte_stable(tmp_path: Path) -> None:
    """Test that equal results give byte-identical files."""
    result = SweepResult([SweepRow(0.01, "estimation", 2.5, 1.2345678901234, 17)])
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    emit_csv(result, str(first))
    emit_csv(result, str(second))
    assert first.read_bytes() == second.read_bytes()


def test_emit_trajectory_csv(tmp_path: Path) -> None:
    """Test trajectory rows with fixed-precision decimals."""
    path = tmp_path / "trajectory.csv"
    emit_trajectory_csv(
        [TrajectoryRow(0.0, 1.0, 1.0, 1.0, 0), TrajectoryRow(0.5, 0.5, 0.5, 1.0, 0)],
        str(path),
        decimals=3,
    )
    assert path.read_text().splitlines() == [
        "t,e,q,p,event",
        "0.000,1.000,1.000,1.000,0",
        "0.500,0.500,0.500,1.000,0",
    ]


def test_write_atomic_failure_leaves_no_file(tmp_path: Path) -> None:
    """Test that a failed write surfaces the path and cleans up."""
    path = tmp_path / "out.csv"

    def explode(out) -> None:
        out.write("partial")
        raise OSError("disk full")

    with pytest.raises(OutputError, match="out.csv"):
        write_atomic(str(path), explode)
    assert not path.exists()
    assert not [name for name in os.listdir(tmp_path) if name.endswith(".tmp")]


def test_write_atomic_into_file_path_fails(tmp_path: Path) -> None:
    """Test that an unwritable destination is an output error."""
    blocker = tmp_path / "blocker"
    blocker.write_text("not a directory")
    with pytest.raises(OutputError):
        emit_csv(SweepResult(), str(blocker / "sweep.csv"))
