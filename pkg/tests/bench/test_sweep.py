"""Test suite for parameter sweeps."""

import math
from typing import List, Tuple

import pytest

from etech.bench.scenarios import BaseParams, Scenario, SweepSpec
from etech.bench.sweep import (
    SweepResult,
    SweepRow,
    finite_region,
    iter_cells,
    run_sweep,
    worst_case,
    worst_param,
)
from etech.core.exceptions import ConfigurationError, ResultLookupError
from etech.core.models import ESTIMATION, GREEDY, ROBUST


@pytest.fixture
def small_s1() -> SweepSpec:
    """A coarse Scenario-1 sweep with a fast step."""
    return SweepSpec(
        scenario=Scenario.S1,
        param_grid=[0.0, 0.5, 1.0],
        policies=[ROBUST, GREEDY],
        epsilons=[0.05],
        base=BaseParams(e0=1.0, q0=1.0, p_max=3.0, dt=1e-3, t_cutoff=5.0),
    )


@pytest.fixture
def small_s3() -> SweepSpec:
    """A few stochastic replications."""
    return SweepSpec(
        scenario=Scenario.S3,
        param_grid=[0.0, 2.0],
        policies=[ROBUST, ESTIMATION],
        epsilons=[0.05, 0.2],
        base=BaseParams(e0=1.0, q0=1.0, p_max=3.0, dt=1e-3, t_cutoff=10.0),
        replications=3,
        master_seed=11,
    )


@pytest.fixture
def handmade() -> SweepResult:
    """Result with one cutoff cell."""
    return SweepResult(
        [
            SweepRow(0.05, "greedy", 0.0, math.inf, 1),
            SweepRow(0.05, "greedy", 0.5, 2.0, 3),
            SweepRow(0.05, "robust", 0.0, 1.0, 1),
            SweepRow(0.05, "robust", 0.5, 0.8, 4),
            SweepRow(0.05, "robust", 1.0, 1.0, 9),
        ]
    )


def test_worst_case_and_region(handmade: SweepResult) -> None:
    """Test derived worst cases, argmax and finite regions."""
    assert worst_case(handmade, 0.05, "robust") == 1.0
    assert worst_param(handmade, 0.05, "robust") == 0.0
    assert finite_region(handmade, 0.05, ROBUST) == [0.0, 0.5, 1.0]
    assert worst_case(handmade, 0.05, GREEDY) == math.inf
    assert finite_region(handmade, 0.05, "greedy") == [0.5]
    assert handmade.keys() == [(0.05, "greedy"), (0.05, "robust")]


def test_lookup_errors(handmade: SweepResult) -> None:
    """Test that unswept pairs raise lookup errors."""
    with pytest.raises(ResultLookupError):
        worst_case(handmade, 0.2, "robust")
    with pytest.raises(ResultLookupError):
        finite_region(handmade, 0.05, "estimation")


def test_worst_case_monotone_under_refinement(handmade: SweepResult) -> None:
    """Test that adding grid points never lowers the worst case."""
    coarse = SweepResult([r for r in handmade.rows if r.param != 0.5])
    for policy in ("robust", "greedy"):
        assert worst_case(handmade, 0.05, policy) >= worst_case(coarse, 0.05, policy)


def test_iter_cells_order_and_seeds(small_s3: SweepSpec) -> None:
    """Test cell enumeration and seed sharing across policies and thresholds."""
    cells = list(iter_cells(small_s3))
    assert len(cells) == 2 * 2 * 2 * 3
    seeds = {}
    for cell in cells:
        seeds.setdefault((cell.param_index, cell.replication), set()).add(cell.seed)
    assert all(len(s) == 1 for s in seeds.values())
    assert len({next(iter(s)) for s in seeds.values()}) == 6


def test_deterministic_cells_have_no_seed(small_s1: SweepSpec) -> None:
    """Test that deterministic scenarios carry no seeds."""
    assert all(cell.seed is None for cell in iter_cells(small_s1))


def test_run_sweep_small_s1(small_s1: SweepSpec) -> None:
    """Test a small deterministic sweep end to end."""
    progress: List[Tuple[int, int]] = []
    result = run_sweep(
        small_s1, progress=lambda done, total: progress.append((done, total))
    )

    assert len(result.rows) == 6
    assert progress[-1] == (6, 6)
    assert [r.policy for r in result.rows] == ["greedy"] * 3 + ["robust"] * 3
    assert worst_case(result, 0.05, "robust") == pytest.approx(1.0, abs=1e-3)
    assert worst_param(result, 0.05, "robust") == 0.0
    assert worst_case(result, 0.05, "greedy") == math.inf
    assert 0.0 not in finite_region(result, 0.05, "greedy")


def test_run_sweep_aggregates_replications(small_s3: SweepSpec) -> None:
    """Test that replications collapse to their worst case."""
    result = run_sweep(small_s3)
    assert len(result.rows) == 2 * 2 * 2
    assert {(r.epsilon, r.policy) for r in result.rows} == {
        (0.05, "robust"),
        (0.05, "estimation"),
        (0.2, "robust"),
        (0.2, "estimation"),
    }


def test_run_sweep_is_deterministic(small_s3: SweepSpec) -> None:
    """Test that a fixed master seed reproduces the result."""
    assert run_sweep(small_s3).rows == run_sweep(small_s3).rows


def test_run_sweep_parallel_matches_serial(small_s1: SweepSpec) -> None:
    """Test that the worker pool does not change the result."""
    assert run_sweep(small_s1, workers=2).rows == run_sweep(small_s1).rows


def test_run_sweep_rejects_invalid(small_s1: SweepSpec) -> None:
    """Test sweep and worker validation."""
    with pytest.raises(ConfigurationError):
        run_sweep(small_s1, workers=0)
    small_s1.epsilons = []
    with pytest.raises(ConfigurationError):
        run_sweep(small_s1)
