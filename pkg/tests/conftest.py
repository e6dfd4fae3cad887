"""Shared fixtures for the etech test suite."""

import logging
from typing import Any, Callable, Generator

import pytest

from etech.core.harvest import HarvestProfile, ZeroHarvest
from etech.core.models import ROBUST, PolicyKind, PowerBudget, SimConfig


@pytest.fixture
def budget() -> PowerBudget:
    """Power budget used throughout the reference scenarios."""
    return PowerBudget(3.0)


@pytest.fixture
def make_config() -> Callable[..., SimConfig]:
    """Factory for simulation configurations with reference defaults."""

    def factory(
        e0: float = 1.0,
        q0: float = 1.0,
        epsilon: float = 0.05,
        profile: HarvestProfile | None = None,
        policy: PolicyKind = ROBUST,
        p_max: float = 3.0,
        **kwargs: Any,
    ) -> SimConfig:
        return SimConfig(
            e0=e0,
            q0=q0,
            budget=PowerBudget(p_max),
            epsilon=epsilon,
            profile=profile if profile is not None else ZeroHarvest(),
            policy=policy,
            **kwargs,
        )

    return factory


@pytest.fixture
def clean_logging() -> Generator[None, None, None]:
    """Reset the package logger after a test configures it."""
    yield
    logger = logging.getLogger("etech")
    logger.handlers = []
    logger.setLevel(logging.NOTSET)
