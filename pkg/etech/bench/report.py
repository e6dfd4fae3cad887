# etech/bench/report.py
"""Terminal summary of a finished sweep."""

from __future__ import annotations

import math

from rich.table import Table

from ..core.console import format_time
from .sweep import SweepResult, finite_region, worst_case, worst_param


def create_sweep_table(result: SweepResult) -> Table:
    """Create a table of worst cases and finite regions per (epsilon, policy)."""
    table = Table(
        title="Worst-case transmission time",
        show_header=True,
        header_style="bold cyan",
        border_style="cyan",
        title_justify="left",
    )
    table.add_column("ε", justify="right")
    table.add_column("Policy")
    table.add_column("Worst case", justify="right")
    table.add_column("At param", justify="right")
    table.add_column("Finite region", justify="right", style="dim")

    for epsilon, policy in result.keys():
        worst = worst_case(result, epsilon, policy)
        region = finite_region(result, epsilon, policy)
        span = (
            f"[{region[0]:g}, {region[-1]:g}] ({len(region)} pts)" if region else "∅"
        )
        table.add_row(
            f"{epsilon:g}",
            policy,
            format_time(worst),
            f"{worst_param(result, epsilon, policy):g}",
            span,
            style=None if math.isfinite(worst) else "red",
        )
    return table
