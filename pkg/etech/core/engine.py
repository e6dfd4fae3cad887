# etech/core/engine.py
"""Closed-loop event-triggered simulation of the transmitter.

The loop advances battery energy and data queue on a fixed time grid.  The
harvest term of each step is the exact profile integral, so the event detector
sees the same harvested energy the battery receives.  Events fire at step
boundaries once the energy harvested since the last event reaches epsilon; the
planner is then re-run and its plan replaces the previous one immediately.
"""

from __future__ import annotations

import logging
import math
from typing import List, Optional

from .exceptions import ConfigurationError
from .harvest import HarvestProfile
from .models import (
    EventRecord,
    PlannedTransmission,
    PolicyContext,
    SimConfig,
    SimOutcome,
    SystemState,
    TrajectoryRow,
)
from .policies import plan
from .rate_math import rate

logger = logging.getLogger(__name__)

QUEUE_TOLERANCE = 1e-9


def trigger_check(harvested_since_event: float, epsilon: float) -> bool:
    """Whether the harvested energy since the last event reaches the threshold."""
    return harvested_since_event >= epsilon


def first_trigger_time(
    profile: HarvestProfile,
    t_start: float,
    epsilon: float,
    dt: float = 1e-4,
    t_cutoff: float = 50.0,
) -> Optional[float]:
    """Return the first grid time after t_start at which an event would fire.

    Args:
        profile: Harvesting profile
        t_start: Time of the last event
        epsilon: Triggering threshold
        dt: Grid spacing
        t_cutoff: Search horizon measured from t_start

    Returns:
        Optional[float]: Trigger time, or None if no trigger within the horizon
    """
    if not epsilon > 0:
        raise ConfigurationError(f"epsilon must be positive, got {epsilon}")
    steps = int(round(t_cutoff / dt))
    harvested = 0.0
    for k in range(1, steps + 1):
        t_prev = t_start + (k - 1) * dt
        t = t_start + k * dt
        harvested += profile.integrate(t_prev, t)
        if trigger_check(harvested, epsilon):
            return t
        if profile.is_quiescent_after(t):
            return None
    return None


class _Recorder:
    """Collects trajectory rows at a fixed stride plus every event."""

    def __init__(self, enabled: bool, stride: int) -> None:
        self.enabled = enabled
        self.stride = stride
        self.rows: List[TrajectoryRow] = []

    def sample(
        self, step: int, t: float, e: float, q: float, p: float, event: int
    ) -> None:
        if self.enabled and step % self.stride == 0:
            self.rows.append(TrajectoryRow(t, e, q, p, event))

    def force(self, t: float, e: float, q: float, p: float, event: int) -> None:
        if self.enabled:
            self.rows.append(TrajectoryRow(t, e, q, p, event))

    @property
    def trajectory(self) -> Optional[List[TrajectoryRow]]:
        return self.rows if self.enabled else None


def simulate(config: SimConfig) -> SimOutcome:
    """Run the event-triggered control loop until the queue is empty or the cutoff.

    Args:
        config: Simulation configuration

    Returns:
        SimOutcome: Transmission time (None on cutoff), events and trajectory

    Raises:
        ConfigurationError: If the configuration is invalid
    """
    config.validate()

    budget = config.budget
    profile = config.profile
    dt = config.dt
    t0 = config.t0
    q_done = QUEUE_TOLERANCE * max(1.0, config.q0)
    total_steps = int(math.ceil(config.t_cutoff / dt - 1e-9))

    e = config.e0
    q = config.q0
    harvested_total = 0.0
    consumed_total = 0.0

    events: List[EventRecord] = []
    recorder = _Recorder(config.record_trajectory, config.trajectory_stride)

    def open_event(
        t: float, prev: Optional[EventRecord], spent: float = 0.0
    ) -> EventRecord:
        ctx = PolicyContext(
            t_n=t,
            e_n=e,
            q_n=q,
            budget=budget,
            epsilon=config.epsilon,
            index=len(events),
            prev=(prev.t_n, prev.e_n) if prev is not None else None,
            spent=spent,
        )
        record = EventRecord(ctx.index, t, e, q, plan(config.policy, ctx))
        events.append(record)
        logger.debug(
            "Event %d at t=%.6f: E=%.6f Q=%.6f -> p=%.6f T=%.6f",
            record.index,
            t,
            e,
            q,
            record.plan.power,
            record.plan.duration,
        )
        return record

    current = open_event(t0, None)
    current_plan: PlannedTransmission = current.plan
    plan_end = current_plan.end_time(t0)
    depleted = False
    event_e = e
    consumed_since_event = 0.0

    def final(transmission_time: Optional[float], t: float) -> SimOutcome:
        return SimOutcome(
            transmission_time=transmission_time,
            events=events,
            final_state=SystemState(t, e, max(q, 0.0)),
            harvested_total=harvested_total,
            consumed_total=consumed_total,
            trajectory=recorder.trajectory,
        )

    t = t0
    for step in range(total_steps):
        t = t0 + step * dt
        t_next = t0 + (step + 1) * dt

        power = 0.0
        active = 0.0
        if not depleted and not current_plan.is_idle and t < plan_end:
            power = current_plan.power
            active = min(plan_end, t_next) - t

        h = profile.integrate(t, t_next)
        available = e + h
        need = power * active
        if need > available:
            # battery floor: spend exactly what is left, then stay silent
            power = available / active
            need = available
            depleted = True

        recorder.sample(step, t, e, q, power, current.index)

        sent = rate(power) * active if power > 0.0 else 0.0
        if sent > 0.0 and q - sent <= q_done:
            crossing = t + min(q / rate(power), active)
            consumed_total += power * (crossing - t)
            harvested_total += h
            e = max(available - power * (crossing - t), 0.0)
            q = 0.0
            recorder.force(crossing, e, q, power, current.index)
            logger.debug(
                "Queue cleared at t=%.6f after %d events", crossing, len(events)
            )
            return final(crossing - t0, crossing)

        e = available - need if need < available else 0.0
        q -= sent
        harvested_total += h
        consumed_total += need
        consumed_since_event += need

        # harvested since the event, seen through battery level and spent energy
        if trigger_check(e - event_e + consumed_since_event, config.epsilon):
            current = open_event(t_next, current, consumed_since_event)
            current_plan = current.plan
            plan_end = current_plan.end_time(t_next)
            depleted = False
            event_e = e
            consumed_since_event = 0.0
            recorder.force(t_next, e, q, current_plan.power, current.index)
            continue

        silent = depleted or current_plan.is_idle or t_next >= plan_end
        if silent and profile.is_quiescent_after(t_next):
            logger.debug(
                "Transmitter silent with no harvest left at t=%.6f, Q=%.6f", t_next, q
            )
            break

    logger.debug("Cutoff reached with Q=%.6f", q)
    return final(None, t0 + total_steps * dt)
