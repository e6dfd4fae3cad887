"""Sweep harness: scenario presets, parameter sweeps and CSV output."""

from .scenarios import BaseParams, Scenario, SweepSpec, load_sweep_spec, preset
from .sweep import SweepResult, SweepRow, finite_region, run_sweep, worst_case
from .writer import emit_csv, emit_trajectory_csv

__all__ = [
    "BaseParams",
    "Scenario",
    "SweepResult",
    "SweepRow",
    "SweepSpec",
    "emit_csv",
    "emit_trajectory_csv",
    "finite_region",
    "load_sweep_spec",
    "preset",
    "run_sweep",
    "worst_case",
]
