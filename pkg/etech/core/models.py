# etech/core/models.py
"""Data models for the etech package."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, List, NamedTuple, Optional, Tuple

from .exceptions import ConfigurationError, DomainError

if TYPE_CHECKING:  # pragma: no cover
    from .harvest import HarvestProfile

LN2 = math.log(2.0)


@dataclass(frozen=True)
class PowerBudget:
    """Maximum transmit power and the slope band it induces."""

    p_max: float

    def __post_init__(self) -> None:
        """Reject non-positive power limits."""
        if not (self.p_max > 0 and math.isfinite(self.p_max)):
            raise DomainError(f"p_max must be positive and finite, got {self.p_max}")

    @property
    def k_min(self) -> float:
        """Slope of the rate-power line through (p_max, r(p_max))."""
        return math.log1p(self.p_max) / LN2 / self.p_max

    @property
    def k_max(self) -> float:
        """Slope of the rate function at p = 0."""
        return 1.0 / LN2


@dataclass(frozen=True)
class PlannedTransmission:
    """A constant-power plan designed at an event."""

    power: float
    duration: float

    def __post_init__(self) -> None:
        """Reject negative or non-finite plans."""
        if not (0.0 <= self.power < math.inf):
            raise DomainError(f"Plan power must be finite and >= 0, got {self.power}")
        if not (0.0 <= self.duration < math.inf):
            raise DomainError(
                f"Plan duration must be finite and >= 0, got {self.duration}"
            )

    def end_time(self, t_n: float) -> float:
        """Return the instant the plan stops transmitting."""
        return t_n + self.duration

    @property
    def is_idle(self) -> bool:
        """Whether the plan transmits nothing."""
        return self.power <= 0.0 or self.duration <= 0.0


IDLE_PLAN = PlannedTransmission(power=0.0, duration=0.0)


class PolicyFamily(Enum):
    """Planner families available to the transmitter."""

    ROBUST = "robust"
    ESTIMATION = "estimation"
    GREEDY = "greedy"


@dataclass(frozen=True)
class PolicyKind:
    """A planner family plus the estimation weight where it applies."""

    family: PolicyFamily
    scale: float = 1.0

    def __post_init__(self) -> None:
        """Reject non-positive estimation weights."""
        if not self.scale > 0:
            raise ConfigurationError(f"Policy scale must be positive, got {self.scale}")

    @classmethod
    def from_name(cls, name: str) -> "PolicyKind":
        """Build a policy from its configuration name.

        Args:
            name: One of robust, estimation, estimation-modified, greedy

        Returns:
            PolicyKind: The matching policy

        Raises:
            ConfigurationError: If the name is unknown
        """
        try:
            return POLICY_NAMES[name.strip().lower()]
        except KeyError as e:
            raise ConfigurationError(
                f"Unknown policy '{name}', expected one of: {', '.join(POLICY_NAMES)}"
            ) from e

    @property
    def name(self) -> str:
        """Configuration name of this policy."""
        for key, kind in POLICY_NAMES.items():
            if kind == self:
                return key
        return f"{self.family.value}({self.scale:g})"


ROBUST = PolicyKind(PolicyFamily.ROBUST)
ESTIMATION = PolicyKind(PolicyFamily.ESTIMATION, 1.0)
ESTIMATION_MODIFIED = PolicyKind(PolicyFamily.ESTIMATION, 0.25)
GREEDY = PolicyKind(PolicyFamily.GREEDY)

POLICY_NAMES = {
    "robust": ROBUST,
    "estimation": ESTIMATION,
    "estimation-modified": ESTIMATION_MODIFIED,
    "greedy": GREEDY,
}


@dataclass(frozen=True)
class PolicyContext:
    """What the planner sees when an event fires."""

    t_n: float
    e_n: float
    q_n: float
    budget: PowerBudget
    epsilon: float
    index: int = 0
    prev: Optional[Tuple[float, float]] = None
    # energy the transmitter itself spent since the previous event
    spent: float = 0.0

    def __post_init__(self) -> None:
        """Reject negative state values."""
        if self.e_n < 0 or self.q_n < 0:
            raise DomainError(
                f"Battery and queue must be nonnegative, got E={self.e_n}, Q={self.q_n}"
            )
        if self.spent < 0:
            raise DomainError(f"Spent energy must be nonnegative, got {self.spent}")


@dataclass(frozen=True)
class SystemState:
    """Instantaneous time, battery energy and data queue."""

    t: float
    e: float
    q: float


@dataclass(frozen=True)
class EventRecord:
    """State captured when an event fired and the plan made for it."""

    index: int
    t_n: float
    e_n: float
    q_n: float
    plan: PlannedTransmission


class TrajectoryRow(NamedTuple):
    """One sampled row of a simulated trajectory."""

    t: float
    e: float
    q: float
    p: float
    event: int


@dataclass
class SimConfig:
    """Everything needed to run one closed-loop simulation."""

    e0: float
    q0: float
    budget: PowerBudget
    epsilon: float
    profile: "HarvestProfile"
    policy: PolicyKind = field(default_factory=lambda: ROBUST)
    dt: float = 1e-4
    t_cutoff: float = 50.0
    t0: float = 0.0
    record_trajectory: bool = False
    trajectory_stride: int = 100

    def validate(self) -> None:
        """Check the configuration invariants.

        Raises:
            ConfigurationError: If any field is out of range
        """
        if not (math.isfinite(self.e0) and self.e0 >= 0):
            raise ConfigurationError(f"e0 must be nonnegative, got {self.e0}")
        if not (math.isfinite(self.q0) and self.q0 > 0):
            raise ConfigurationError(f"q0 must be positive, got {self.q0}")
        if not self.epsilon > 0:
            raise ConfigurationError(f"epsilon must be positive, got {self.epsilon}")
        if not self.dt > 0:
            raise ConfigurationError(f"dt must be positive, got {self.dt}")
        if not self.t_cutoff > 0:
            raise ConfigurationError(f"t_cutoff must be positive, got {self.t_cutoff}")
        if self.dt > self.t_cutoff:
            raise ConfigurationError("dt must not exceed t_cutoff")
        if self.trajectory_stride < 1:
            raise ConfigurationError("trajectory_stride must be at least 1")


@dataclass
class SimOutcome:
    """Result of one simulation run."""

    transmission_time: Optional[float]
    events: List[EventRecord]
    final_state: SystemState
    harvested_total: float = 0.0
    consumed_total: float = 0.0
    trajectory: Optional[List[TrajectoryRow]] = None

    @property
    def finished(self) -> bool:
        """Whether the queue was cleared before the cutoff."""
        return self.transmission_time is not None

    @property
    def event_count(self) -> int:
        """Number of events, the initial one included."""
        return len(self.events)

    @property
    def time_or_inf(self) -> float:
        """Transmission time with cutoff mapped to infinity."""
        return math.inf if self.transmission_time is None else self.transmission_time
