"""
Historical (order-statistic) Value-at-Risk.

VaR is reported as a non-negative loss magnitude in return units. Long
positions lose in the lower tail, short positions in the upper tail; both
tails use the same tail count ``k = ceil(n * (1 - p))`` so that negating the
returns exactly swaps the two positions.
"""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from core.choices import Frequency, Position, VarMethod, WaitingPeriod
from core.exceptions import InsufficientSample, InvalidConfig, UnsupportedCombination

# n * q products such as 10 * (1 - 0.9) land a few ulps off the integer
TAIL_COUNT_SLACK = 1e-9

# Trading-calendar lengths of each waiting period, in units of the frequency.
CALENDAR = {
    Frequency.DAILY: {
        WaitingPeriod.WEEK: 5,
        WaitingPeriod.MONTH: 22,
        WaitingPeriod.QUARTER: 65,
        WaitingPeriod.SEMESTER: 130,
        WaitingPeriod.YEAR: 260,
        WaitingPeriod.TWO_YEARS: 520,
    },
    Frequency.WEEKLY: {
        WaitingPeriod.MONTH: 4,
        WaitingPeriod.QUARTER: 13,
        WaitingPeriod.SEMESTER: 26,
        WaitingPeriod.YEAR: 52,
    },
}


@dataclass(frozen=True)
class ProbabilityLevel:
    """
    VaR confidence level, optionally tied to an average waiting time.

    A level with ``waiting_periods = k`` has ``p = 1 - 1/k``: a loss beyond the
    VaR is expected once every ``k`` periods of the return frequency.
    """

    p: float
    waiting_periods: Optional[int] = None
    period: Optional[WaitingPeriod] = None

    def __post_init__(self):
        p = float(self.p)
        if not 0.0 < p < 1.0:
            raise InvalidConfig(f"probability {p} must lie strictly between 0 and 1")
        if self.waiting_periods is not None:
            k = int(self.waiting_periods)
            if k < 2:
                raise InvalidConfig(f"waiting period {k} must be at least 2")
            if p != 1.0 - 1.0 / k:
                raise InvalidConfig(f"probability {p} does not match waiting period {k}")
            object.__setattr__(self, "waiting_periods", k)
        if self.period is not None:
            object.__setattr__(self, "period", WaitingPeriod(self.period))
        object.__setattr__(self, "p", p)

    @classmethod
    def from_waiting_periods(cls, k, period=None):
        return cls(1.0 - 1.0 / k, k, period)

    @property
    def tail(self):
        return 1.0 - self.p

    @property
    def label(self):
        return f"{self.p * 100:.2f}%"

    @property
    def annotated_label(self):
        if self.period is not None:
            return f"{self.label} ({WaitingPeriod(self.period).label})"
        if self.waiting_periods is not None:
            return f"{self.label} ({self.waiting_periods} periods)"
        return self.label

    def supported_by(self, n_obs):
        return n_obs * self.tail >= 1.0 - TAIL_COUNT_SLACK


@dataclass(frozen=True)
class VarEstimate:
    value: float
    p: ProbabilityLevel
    position: Position
    method: VarMethod
    n_obs: int

    def __post_init__(self):
        if not self.value >= 0.0:
            raise InvalidConfig(f"VaR {self.value} must be non-negative")
        if self.n_obs < 1 or not self.p.supported_by(self.n_obs):
            raise InsufficientSample(
                f"{self.n_obs} observations leave no tail observation at {self.p.label}"
            )
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "position", Position(self.position))
        object.__setattr__(self, "method", VarMethod(self.method))


def waiting_period_to_probability(frequency, period):
    try:
        frequency, period = Frequency(frequency), WaitingPeriod(period)
    except ValueError as exc:
        raise UnsupportedCombination(str(exc))
    k = CALENDAR[frequency].get(period)
    if k is None:
        raise UnsupportedCombination(f"{period.label} is not a {frequency.value} waiting period")
    return ProbabilityLevel.from_waiting_periods(k, period)


def tail_count(n, q):
    """1-based rank of the order statistic used as the q-quantile."""
    return min(n, max(1, math.ceil(n * q - TAIL_COUNT_SLACK)))


def empirical_quantile(sample, q):
    """
    The ceil(n*q)-th smallest observation, without interpolation.

    Callers estimating a tail quantile must make sure ``n * min(q, 1 - q) >= 1``
    (``historical_var`` does); here only an empty sample is rejected.
    """
    values = np.asarray(sample, dtype=np.float64)
    n = values.size
    if not 0.0 < q < 1.0:
        raise InvalidConfig(f"quantile level {q} must lie strictly between 0 and 1")
    if n == 0:
        raise InsufficientSample(f"empty sample has no {q:.6g}-quantile")
    k = tail_count(n, q)
    return float(np.partition(values, k - 1)[k - 1])


def historical_var(returns, p, position):
    position = Position(position)
    values = returns.values
    if not p.supported_by(len(values)):
        raise InsufficientSample(
            f"{returns.asset_id}: {len(values)} observations leave no tail observation at {p.label}"
        )
    if position == Position.LONG:
        loss = -empirical_quantile(values, p.tail)
    else:
        loss = -empirical_quantile(-values, p.tail)
    return VarEstimate(
        value=max(0.0, loss),
        p=p,
        position=position,
        method=VarMethod.PORTFOLIO_QUANTILE,
        n_obs=len(values),
    )
