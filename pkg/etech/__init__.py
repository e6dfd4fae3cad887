# etech/__init__.py
"""
etech - event-triggered transmission for an energy-harvesting transmitter.

This package simulates a transmitter that clears a data queue using energy
harvested at an unknown rate, re-planning its power whenever a fixed quantum
of energy has been harvested, and compares the robust-optimal planner against
estimation-based and greedy baselines.
"""

import importlib.metadata

from .core.engine import simulate
from .core.exceptions import EtechError
from .core.models import PlannedTransmission, PolicyKind, PowerBudget, SimConfig

try:
    # First, try to get version from installed package
    __version__ = importlib.metadata.version("etech")
except importlib.metadata.PackageNotFoundError:  # pragma: no cover
    try:
        # If not installed, try to get version from setuptools_scm
        from ._version import version as __version__  # noqa
    except ImportError:  # pragma: no cover
        # If running from source without setuptools_scm installed
        __version__ = "0.0.0.dev0"

__all__ = [
    "EtechError",
    "PlannedTransmission",
    "PolicyKind",
    "PowerBudget",
    "SimConfig",
    "simulate",
]
