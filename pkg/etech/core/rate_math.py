# etech/core/rate_math.py
"""Closed-form mathematics of the rate-power equilibrium.

The channel delivers ``r(p) = log2(1 + p)`` bits per unit time at power ``p``.
For a slope ``k`` the rate-power line ``r = k p`` meets the rate curve at a
positive power only when ``K_min <= k < K_max``; that intersection is the
rate-power equilibrium (RPE).  Its power has a closed form through the lower
real branch of the Lambert W function, which is why this module carries its
own ``W_{-1}`` solver.
"""

from __future__ import annotations

import logging
import math
from typing import Optional, Tuple

from .exceptions import DomainError
from .models import LN2, PowerBudget

logger = logging.getLogger(__name__)

# Slope of a rate-power line (dimensionless).
SlopeK = float

BRANCH_POINT = -1.0 / math.e
BRANCH_SNAP = 1e-14
_W_LOWER = -700.0
_MAX_ITERATIONS = 200


def rate(p: float) -> float:
    """Return the channel rate log2(1 + p).

    Args:
        p: Transmit power, nonnegative

    Returns:
        float: Rate in bits per normalized time unit

    Raises:
        DomainError: If p is negative
    """
    if p < 0:
        raise DomainError(f"Power must be nonnegative, got {p}")
    return math.log1p(p) / LN2


def lambert_w_m1(x: float) -> float:
    """Evaluate the lower real branch W_{-1} of the Lambert W function.

    Safeguarded Halley iteration on ``w e^w - x`` inside a shrinking bisection
    bracket over ``[-700, -1]``.  Arguments within 1e-14 of ``-1/e`` return the
    branch point exactly.

    Args:
        x: Argument in [-1/e, 0)

    Returns:
        float: w <= -1 with w e^w = x

    Raises:
        DomainError: If x lies outside [-1/e, 0)
    """
    if not (BRANCH_POINT - BRANCH_SNAP <= x < 0.0):
        raise DomainError(f"W_-1 is defined on [-1/e, 0), got {x}")
    if x - BRANCH_POINT <= BRANCH_SNAP:
        return -1.0

    def residual(w: float) -> float:
        return w * math.exp(w) - x

    # w e^w decreases from 0 to -1/e on (-inf, -1], so residual(lo) > 0 > residual(hi)
    lo, hi = _W_LOWER, -1.0
    if residual(lo) <= 0.0:
        # beyond the double-precision range of e^w; asymptotic value is exact enough
        l1 = math.log(-x)
        l2 = math.log(-l1)
        return l1 - l2 + l2 / l1

    w = _initial_guess(x)
    if not lo < w < hi:
        w = 0.5 * (lo + hi)

    for _ in range(_MAX_ITERATIONS):
        f = residual(w)
        if f == 0.0:
            return w
        if f > 0.0:
            lo = w
        else:
            hi = w

        ew = math.exp(w)
        w1 = w + 1.0
        denom = ew * w1 - (w + 2.0) * f / (2.0 * w1)
        step = f / denom if denom != 0.0 else math.inf
        candidate = w - step
        if not lo < candidate < hi:
            candidate = 0.5 * (lo + hi)
        if abs(candidate - w) <= 1e-15 * (1.0 + abs(w)):
            return candidate
        w = candidate

    logger.debug("W_-1 iteration limit reached for x=%r", x)
    return w


def _initial_guess(x: float) -> float:
    """Series start near the branch point, asymptotic start elsewhere."""
    if x < -0.25:
        p = -math.sqrt(2.0 * (math.e * x + 1.0))
        return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p**3
    l1 = math.log(-x)
    l2 = math.log(-l1)
    return l1 - l2 + l2 / l1


def k_constants(budget: PowerBudget) -> Tuple[float, float]:
    """Return the slope band (K_min, K_max) for a power budget."""
    return budget.k_min, budget.k_max


def in_band(k: SlopeK, budget: PowerBudget) -> bool:
    """Whether an RPE exists for slope k (K_min inclusive, K_max exclusive)."""
    return budget.k_min <= k < budget.k_max


def rpe_power(k: SlopeK, budget: PowerBudget) -> Optional[float]:
    """Return the power of the rate-power equilibrium for slope k.

    Args:
        k: Slope of the rate-power line
        budget: Power budget defining the band

    Returns:
        Optional[float]: Power p_e in (0, p_max], or None when no RPE exists

    Raises:
        DomainError: If k is not positive
    """
    if not k > 0:
        raise DomainError(f"Slope must be positive, got {k}")
    if not in_band(k, budget):
        return None

    a = k * LN2
    w = lambert_w_m1(-a * math.pow(2.0, -k))
    p = -w / a - 1.0
    return min(p, budget.p_max)


def k_balanced(e: float, q: float) -> float:
    """Energy-balanced slope Q/E, infinite for an empty battery."""
    if e < 0 or q < 0:
        raise DomainError(f"Battery and queue must be nonnegative, got E={e}, Q={q}")
    if e == 0.0:
        return math.inf if q > 0 else 0.0
    return q / e


def balanced_power(e: float, q: float, budget: PowerBudget) -> float:
    """Return the power that empties battery and queue at the same instant.

    Args:
        e: Battery energy
        q: Data queue
        budget: Power budget

    Returns:
        float: RPE power at slope q / e

    Raises:
        DomainError: If q / e lies outside [K_min, K_max)
    """
    k = k_balanced(e, q)
    p = rpe_power(k, budget) if k > 0 else None
    if p is None:
        raise DomainError(
            f"Balanced slope {k:.6g} outside [{budget.k_min:.6g}, {budget.k_max:.6g})"
        )
    return p


def reachable(
    e_start: float,
    q_start: float,
    e_end: float,
    q_end: float,
    budget: PowerBudget,
) -> bool:
    """Whether a zero-harvest transmission can move (e_start, q_start) to the end point.

    Raises:
        DomainError: If any input is negative or q_start is zero
    """
    if min(e_start, e_end, q_end) < 0 or not q_start > 0:
        raise DomainError(
            "Reachability needs e_start, e_end, q_end >= 0 and q_start > 0"
        )
    if e_end == e_start and q_end == q_start:
        return True
    if not (e_end < e_start and q_end < q_start):
        return False
    return in_band((q_start - q_end) / (e_start - e_end), budget)


def optimal_duration(
    e_start: float,
    q_start: float,
    e_end: float,
    q_end: float,
    budget: PowerBudget,
) -> float:
    """Shortest time to reach the end point, attained at constant RPE power.

    Raises:
        DomainError: If the end point is not reachable
    """
    if not reachable(e_start, q_start, e_end, q_end, budget):
        raise DomainError(
            f"({e_end}, {q_end}) is not reachable from ({e_start}, {q_start})"
        )
    if e_end == e_start and q_end == q_start:
        return 0.0
    p = rpe_power((q_start - q_end) / (e_start - e_end), budget)
    assert p is not None
    return (e_start - e_end) / p


def end_point(e: float, q: float, budget: PowerBudget) -> Optional[Tuple[float, float]]:
    """Target end point of the robust plan from (e, q).

    Energy-abundant states keep leftover energy once the queue is empty.
    Balanced states end at the origin; energy-scarce states return None.
    """
    if q == 0.0:
        return (e, q)
    k = k_balanced(e, q)
    if k < budget.k_min:
        return (e - q / budget.k_min, 0.0)
    if k < budget.k_max:
        return (0.0, 0.0)
    return None


def worst_case_time(e0: float, q0: float, budget: PowerBudget) -> float:
    """Robust worst-case transmission time, infinite when q0 / e0 >= K_max."""
    if q0 == 0.0:
        return 0.0
    k = k_balanced(e0, q0)
    if k < budget.k_min:
        return q0 / rate(budget.p_max)
    if k < budget.k_max:
        return e0 / balanced_power(e0, q0, budget)
    return math.inf
