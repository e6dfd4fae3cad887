# etech/core/policies.py
"""Transmission planners run at every event.

Each planner sees only the battery energy and data queue recorded at the event
(plus, for the estimation baselines, the previous event's state) and returns a
constant-power plan assuming nothing more will be harvested.
"""

from __future__ import annotations

import logging

from .exceptions import DomainError
from .models import (
    IDLE_PLAN,
    PlannedTransmission,
    PolicyContext,
    PolicyFamily,
    PolicyKind,
)
from .rate_math import balanced_power, k_balanced, rate

logger = logging.getLogger(__name__)


def _max_power_plan(ctx: PolicyContext) -> PlannedTransmission:
    p_max = ctx.budget.p_max
    return PlannedTransmission(p_max, ctx.q_n / rate(p_max))


def plan_robust(ctx: PolicyContext) -> PlannedTransmission:
    """Design the robust-optimal plan for the event.

    Energy-abundant events transmit at p_max until the queue is empty.  In the
    balanced band the plan empties battery and queue at the same instant.
    Energy-scarce events wait for the next event.

    Args:
        ctx: State recorded at the event

    Returns:
        PlannedTransmission: The constant-power plan
    """
    if ctx.q_n == 0.0:
        return IDLE_PLAN
    k = k_balanced(ctx.e_n, ctx.q_n)
    if k < ctx.budget.k_min:
        return _max_power_plan(ctx)
    if k < ctx.budget.k_max:
        p_bal = balanced_power(ctx.e_n, ctx.q_n, ctx.budget)
        return PlannedTransmission(p_bal, ctx.e_n / p_bal)
    return IDLE_PLAN


def estimated_harvest_rate(ctx: PolicyContext) -> float:
    """Average harvesting rate over the last inter-event interval.

    The harvested energy is the battery change plus what the transmitter spent
    in between, so with nothing spent this is the plain battery difference.

    Raises:
        DomainError: If the previous event has the same timestamp
    """
    if ctx.prev is None or ctx.index == 0:
        return 0.0
    t_prev, e_prev = ctx.prev
    if ctx.t_n == t_prev:
        raise DomainError(f"Degenerate estimation interval at t={ctx.t_n}")
    return (ctx.e_n - e_prev + ctx.spent) / (ctx.t_n - t_prev)


def plan_estimation(ctx: PolicyContext, scale: float) -> PlannedTransmission:
    """Design the estimation-based plan.

    Same branches as the robust plan, except the balanced branch adds
    ``scale`` times the last observed harvesting rate to the balanced power.
    The result is clipped to [0, p_max].

    Args:
        ctx: State recorded at the event
        scale: Weight of the estimated rate

    Returns:
        PlannedTransmission: The constant-power plan
    """
    if ctx.q_n == 0.0:
        return IDLE_PLAN
    k = k_balanced(ctx.e_n, ctx.q_n)
    if k < ctx.budget.k_min:
        return _max_power_plan(ctx)
    if k >= ctx.budget.k_max:
        return IDLE_PLAN

    delta_p = scale * estimated_harvest_rate(ctx)
    p_bal = balanced_power(ctx.e_n, ctx.q_n, ctx.budget)
    power = min(p_bal + delta_p, ctx.budget.p_max)
    if power <= 0.0:
        logger.debug(
            "Estimated power %.6g is not positive at event %d", power, ctx.index
        )
        return IDLE_PLAN
    return PlannedTransmission(power, ctx.e_n / power)


def plan_greedy(ctx: PolicyContext) -> PlannedTransmission:
    """Transmit at full power while battery and queue last."""
    if ctx.e_n <= 0.0 or ctx.q_n <= 0.0:
        return IDLE_PLAN
    p_max = ctx.budget.p_max
    return PlannedTransmission(p_max, min(ctx.e_n / p_max, ctx.q_n / rate(p_max)))


def plan(kind: PolicyKind, ctx: PolicyContext) -> PlannedTransmission:
    """Dispatch to the planner of the given policy.

    Raises:
        DomainError: If the planner exceeds the power budget
    """
    if kind.family is PolicyFamily.ROBUST:
        result = plan_robust(ctx)
    elif kind.family is PolicyFamily.ESTIMATION:
        result = plan_estimation(ctx, kind.scale)
    else:
        result = plan_greedy(ctx)
    if result.power > ctx.budget.p_max:
        raise DomainError(
            f"{kind.name} planned power {result.power} above p_max {ctx.budget.p_max}"
        )
    return result
