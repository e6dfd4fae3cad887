# etech/bench/sweep.py
"""Parameter sweeps over harvesting-profile families.

A sweep runs one simulation per (epsilon, policy, parameter, replication) cell
and keeps, per (epsilon, policy, parameter), the worst replication.  Worst
cases and finite-time regions are then read off the swept family only.
"""

from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Protocol, Tuple, Union

from ..core.engine import simulate
from ..core.exceptions import ConfigurationError, ResultLookupError
from ..core.models import PolicyKind, PowerBudget, SimConfig
from .scenarios import SweepSpec, cell_seed, profile_for

logger = logging.getLogger(__name__)

CUTOFF = math.inf


@dataclass(frozen=True)
class SweepCell:
    """One simulation of a sweep."""

    epsilon: float
    policy: PolicyKind
    param_index: int
    param: float
    replication: int
    seed: Optional[int]


@dataclass(frozen=True)
class SweepRow:
    """Worst replication of one (epsilon, policy, param) cell."""

    epsilon: float
    policy: str
    param: float
    transmission_time: float
    events: int

    @property
    def finished(self) -> bool:
        """Whether the run cleared the queue before the cutoff."""
        return math.isfinite(self.transmission_time)


@dataclass
class SweepResult:
    """Rows of a sweep, sorted by (epsilon, policy, param)."""

    rows: List[SweepRow] = field(default_factory=list)

    def cells(self, epsilon: float, policy: Union[str, PolicyKind]) -> List[SweepRow]:
        """Rows for one (epsilon, policy) pair.

        Raises:
            ResultLookupError: If the pair was not swept
        """
        name = policy_name(policy)
        selected = [r for r in self.rows if r.epsilon == epsilon and r.policy == name]
        if not selected:
            raise ResultLookupError(f"No cells for epsilon={epsilon:g}, policy={name}")
        return selected

    def keys(self) -> List[Tuple[float, str]]:
        """Distinct (epsilon, policy) pairs in row order."""
        seen: Dict[Tuple[float, str], None] = {}
        for row in self.rows:
            seen.setdefault((row.epsilon, row.policy), None)
        return list(seen)


class CellCallback(Protocol):
    """Protocol for per-cell progress callbacks."""

    def __call__(self, done: int, total: int) -> None:
        """Report that ``done`` of ``total`` cells have finished."""
        ...


def policy_name(policy: Union[str, PolicyKind]) -> str:
    """Normalize a policy or its name to the configuration name."""
    if isinstance(policy, PolicyKind):
        return policy.name
    return PolicyKind.from_name(policy).name


def iter_cells(spec: SweepSpec) -> Iterator[SweepCell]:
    """Enumerate every cell of the sweep in a fixed order."""
    for epsilon in spec.epsilons:
        for policy in spec.policies:
            for index, param in enumerate(spec.param_grid):
                for replication in range(spec.replications):
                    seed = (
                        cell_seed(spec.master_seed, index, replication)
                        if spec.stochastic and spec.master_seed is not None
                        else None
                    )
                    yield SweepCell(epsilon, policy, index, param, replication, seed)


def run_cell(spec: SweepSpec, cell: SweepCell) -> Tuple[SweepCell, float, int]:
    """Simulate one cell with its own freshly built profile."""
    config = SimConfig(
        e0=spec.base.e0,
        q0=spec.base.q0,
        budget=PowerBudget(spec.base.p_max),
        epsilon=cell.epsilon,
        profile=profile_for(spec, cell.param, cell.seed),
        policy=cell.policy,
        dt=spec.base.dt,
        t_cutoff=spec.base.t_cutoff,
        t0=spec.base.t0,
    )
    outcome = simulate(config)
    logger.debug(
        "Cell eps=%g policy=%s param=%g rep=%d -> %s",
        cell.epsilon,
        cell.policy.name,
        cell.param,
        cell.replication,
        outcome.transmission_time,
    )
    return cell, outcome.time_or_inf, outcome.event_count


def _collect(
    worst: Dict[Tuple[float, str, int], SweepRow],
    cell: SweepCell,
    time_value: float,
    events: int,
) -> None:
    key = (cell.epsilon, cell.policy.name, cell.param_index)
    row = SweepRow(cell.epsilon, cell.policy.name, cell.param, time_value, events)
    current = worst.get(key)
    if current is None or (time_value, events) > (
        current.transmission_time,
        current.events,
    ):
        worst[key] = row


def run_sweep(
    spec: SweepSpec,
    workers: int = 1,
    progress: Optional[CellCallback] = None,
) -> SweepResult:
    """Run every cell of the sweep and aggregate replications by their maximum.

    Args:
        spec: Sweep specification
        workers: Size of the process pool; 1 runs in-process
        progress: Optional callback invoked after each finished cell

    Returns:
        SweepResult: Rows sorted by (epsilon, policy, param)

    Raises:
        ConfigurationError: If the sweep is invalid
    """
    spec.validate()
    if workers < 1:
        raise ConfigurationError(f"workers must be at least 1, got {workers}")

    cells = list(iter_cells(spec))
    total = len(cells)
    logger.info(
        "Sweeping %s: %d cells on %d worker(s)", spec.scenario.value, total, workers
    )
    started = time.perf_counter()
    worst: Dict[Tuple[float, str, int], SweepRow] = {}

    if workers == 1:
        for done, cell in enumerate(cells, start=1):
            _collect(worst, *run_cell(spec, cell))
            if progress is not None:
                progress(done, total)
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(run_cell, spec, cell) for cell in cells]
            for done, future in enumerate(as_completed(futures), start=1):
                _collect(worst, *future.result())
                if progress is not None:
                    progress(done, total)

    rows = sorted(worst.values(), key=lambda r: (r.epsilon, r.policy, r.param))
    logger.info(
        "Sweep finished: %d rows in %.2f seconds",
        len(rows),
        time.perf_counter() - started,
    )
    return SweepResult(rows)


def worst_case(
    result: SweepResult, epsilon: float, policy: Union[str, PolicyKind]
) -> float:
    """Largest transmission time over the grid, infinite if any cell hit the cutoff.

    Raises:
        ResultLookupError: If the pair was not swept
    """
    return max(row.transmission_time for row in result.cells(epsilon, policy))


def worst_param(
    result: SweepResult, epsilon: float, policy: Union[str, PolicyKind]
) -> float:
    """Grid parameter at which the worst case is attained (first on ties)."""
    rows = result.cells(epsilon, policy)
    worst = max(row.transmission_time for row in rows)
    return next(row.param for row in rows if row.transmission_time == worst)


def finite_region(
    result: SweepResult, epsilon: float, policy: Union[str, PolicyKind]
) -> List[float]:
    """Grid parameters with a finite transmission time.

    Raises:
        ResultLookupError: If the pair was not swept
    """
    return [row.param for row in result.cells(epsilon, policy) if row.finished]

