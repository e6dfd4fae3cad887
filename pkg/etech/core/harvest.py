# etech/core/harvest.py
"""Energy-harvesting rate profiles.

A profile maps time to a nonnegative harvesting rate and integrates it exactly
over any interval.  The engine only ever calls :meth:`HarvestProfile.integrate`
on consecutive steps, so each variant keeps that path cheap.
"""

from __future__ import annotations

import bisect
import logging
import math
from abc import ABC, abstractmethod
from typing import List, Sequence, Tuple

import numpy as np

from .exceptions import DomainError

logger = logging.getLogger(__name__)


class HarvestProfile(ABC):
    """Harvesting rate H(t) >= 0 on [t0, inf)."""

    @abstractmethod
    def rate_at(self, t: float) -> float:
        """Return H(t)."""

    @abstractmethod
    def _integral(self, t_a: float, t_b: float) -> float:
        """Integral of H over [t_a, t_b], t_a <= t_b."""

    def integrate(self, t_a: float, t_b: float) -> float:
        """Return the energy harvested over [t_a, t_b].

        Args:
            t_a: Interval start
            t_b: Interval end, not before t_a

        Returns:
            float: Nonnegative harvested energy

        Raises:
            DomainError: If t_b < t_a
        """
        if t_b < t_a:
            raise DomainError(f"Integration interval reversed: [{t_a}, {t_b}]")
        if t_b == t_a:
            return 0.0
        return max(self._integral(t_a, t_b), 0.0)

    def is_quiescent_after(self, t: float) -> bool:
        """Whether H is identically zero on [t, inf)."""
        return False

    @abstractmethod
    def describe(self) -> str:
        """One-line summary for logs."""


class ZeroHarvest(HarvestProfile):
    """No energy ever arrives."""

    def rate_at(self, t: float) -> float:
        return 0.0

    def _integral(self, t_a: float, t_b: float) -> float:
        return 0.0

    def is_quiescent_after(self, t: float) -> bool:
        return True

    def describe(self) -> str:
        return "zero"


class PiecewiseConstantHarvest(HarvestProfile):
    """Rate held constant between ascending breakpoints.

    The rate is zero before the first breakpoint; the last rate holds forever.
    """

    def __init__(self, breakpoints: Sequence[Tuple[float, float]]) -> None:
        """Initialize from (t_start, rate) pairs.

        Raises:
            DomainError: If the list is empty, unsorted or has negative rates
        """
        if not breakpoints:
            raise DomainError(
                "Piecewise-constant profile needs at least one breakpoint"
            )
        starts = [float(t) for t, _ in breakpoints]
        rates = [float(r) for _, r in breakpoints]
        if any(b <= a for a, b in zip(starts, starts[1:])):
            raise DomainError("Breakpoints must be strictly increasing")
        if any(r < 0 or not math.isfinite(r) for r in rates):
            raise DomainError("Harvesting rates must be nonnegative and finite")

        self.starts = starts
        self.rates = rates
        # cumulative energy from starts[0] to each breakpoint
        self._cumulative = [0.0]
        for i in range(1, len(starts)):
            self._cumulative.append(
                self._cumulative[-1] + rates[i - 1] * (starts[i] - starts[i - 1])
            )

    def rate_at(self, t: float) -> float:
        i = bisect.bisect_right(self.starts, t) - 1
        return self.rates[i] if i >= 0 else 0.0

    def _antiderivative(self, t: float) -> float:
        i = bisect.bisect_right(self.starts, t) - 1
        if i < 0:
            return 0.0
        return self._cumulative[i] + self.rates[i] * (t - self.starts[i])

    def _integral(self, t_a: float, t_b: float) -> float:
        i = bisect.bisect_right(self.starts, t_a) - 1
        if i >= 0 and (i + 1 == len(self.starts) or t_b <= self.starts[i + 1]):
            # single segment
            return self.rates[i] * (t_b - t_a)
        return self._antiderivative(t_b) - self._antiderivative(t_a)

    def is_quiescent_after(self, t: float) -> bool:
        i = max(bisect.bisect_right(self.starts, t) - 1, 0)
        return all(r == 0.0 for r in self.rates[i:])

    def describe(self) -> str:
        pairs = ", ".join(f"({t:g}, {r:g})" for t, r in zip(self.starts, self.rates))
        return f"piecewise_constant[{pairs}]"


def _abs_sin_antiderivative(t: float) -> float:
    """Integral of |sin| from 0 to t, odd in t."""
    if t < 0:
        return -_abs_sin_antiderivative(-t)
    half_periods = math.floor(t / math.pi)
    return 2.0 * half_periods + (1.0 - math.cos(t - half_periods * math.pi))


class WindowedAbsSinHarvest(HarvestProfile):
    """H(t) = a |sin t| on [0, window_end], zero afterwards."""

    def __init__(self, amplitude: float, window_end: float) -> None:
        """Initialize the profile.

        Raises:
            DomainError: If the amplitude is negative
        """
        if amplitude < 0 or not math.isfinite(amplitude):
            raise DomainError(f"Amplitude must be nonnegative, got {amplitude}")
        self.amplitude = float(amplitude)
        self.window_end = float(window_end)

    def rate_at(self, t: float) -> float:
        if t < 0.0 or t > self.window_end:
            return 0.0
        return self.amplitude * abs(math.sin(t))

    def _integral(self, t_a: float, t_b: float) -> float:
        lo = min(max(t_a, 0.0), self.window_end)
        hi = min(max(t_b, 0.0), self.window_end)
        if hi <= lo or self.amplitude == 0.0:
            return 0.0
        # exact on a monotone half-period, the common case for small steps
        k = math.floor(lo / math.pi)
        if hi <= (k + 1) * math.pi:
            return self.amplitude * abs(math.cos(lo) - math.cos(hi))
        return self.amplitude * (
            _abs_sin_antiderivative(hi) - _abs_sin_antiderivative(lo)
        )

    def is_quiescent_after(self, t: float) -> bool:
        return self.amplitude == 0.0 or t >= self.window_end

    def describe(self) -> str:
        return f"windowed_abs_sin(a={self.amplitude:g}, end={self.window_end:g})"


class CompoundPoissonSinHarvest(HarvestProfile):
    """Stochastic piecewise-constant rate driven by Poisson arrivals.

    At each arrival time tau_i (rate ``poisson_rate``) a mark
    D_i ~ Normal(a |sin tau_i|, mark_variance) is drawn and H holds
    max(D_i, 0) until the next arrival.  The sample path is generated lazily
    in fixed-size chunks from ``numpy.random.default_rng(seed)``, so it is the
    same however far or in whatever order it is queried.

    One instance belongs to one simulation run.
    """

    CHUNK = 256

    def __init__(
        self,
        amplitude: float,
        poisson_rate: float,
        mark_variance: float,
        seed: int,
        t0: float = 0.0,
    ) -> None:
        """Initialize the profile.

        Raises:
            DomainError: If a parameter is out of range
        """
        if amplitude < 0 or not math.isfinite(amplitude):
            raise DomainError(f"Amplitude must be nonnegative, got {amplitude}")
        if not poisson_rate > 0:
            raise DomainError(f"Poisson rate must be positive, got {poisson_rate}")
        if mark_variance < 0:
            raise DomainError(f"Mark variance must be nonnegative, got {mark_variance}")
        self.amplitude = float(amplitude)
        self.poisson_rate = float(poisson_rate)
        self.mark_variance = float(mark_variance)
        self.seed = int(seed)
        self.t0 = float(t0)

        self._rng = np.random.default_rng(self.seed)
        # arrival times, held rates, and cumulative energy at each arrival
        self._times: List[float] = []
        self._rates: List[float] = []
        self._cumulative: List[float] = []

    def _extend(self) -> None:
        gaps = self._rng.exponential(1.0 / self.poisson_rate, self.CHUNK)
        normals = self._rng.standard_normal(self.CHUNK)
        start = self._times[-1] if self._times else self.t0
        times = start + np.cumsum(gaps)
        means = self.amplitude * np.abs(np.sin(times))
        rates = np.maximum(means + math.sqrt(self.mark_variance) * normals, 0.0)

        for tau, h in zip(times.tolist(), rates.tolist()):
            if self._times:
                self._cumulative.append(
                    self._cumulative[-1]
                    + self._rates[-1] * (tau - self._times[-1])
                )
            else:
                self._cumulative.append(0.0)
            self._times.append(tau)
            self._rates.append(h)

    def _cover(self, t: float) -> None:
        while not self._times or self._times[-1] <= t:
            self._extend()

    def rate_at(self, t: float) -> float:
        self._cover(t)
        i = bisect.bisect_right(self._times, t) - 1
        return self._rates[i] if i >= 0 else 0.0

    def _antiderivative(self, t: float) -> float:
        self._cover(t)
        i = bisect.bisect_right(self._times, t) - 1
        if i < 0:
            return 0.0
        return self._cumulative[i] + self._rates[i] * (t - self._times[i])

    def _integral(self, t_a: float, t_b: float) -> float:
        self._cover(t_b)
        i = bisect.bisect_right(self._times, t_a) - 1
        if t_b <= self._times[i + 1]:
            return self._rates[i] * (t_b - t_a) if i >= 0 else 0.0
        return self._antiderivative(t_b) - self._antiderivative(t_a)

    def arrivals_until(self, t: float) -> List[Tuple[float, float]]:
        """Arrival times and held rates up to t."""
        self._cover(t)
        end = bisect.bisect_right(self._times, t)
        return list(zip(self._times[:end], self._rates[:end]))

    def describe(self) -> str:
        return (
            f"compound_poisson_sin(a={self.amplitude:g}, lambda={self.poisson_rate:g}, "
            f"var={self.mark_variance:g}, seed={self.seed})"
        )
