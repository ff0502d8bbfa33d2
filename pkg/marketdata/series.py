"""
Immutable value types for price and return observations.

Dates are stored as ``datetime64[D]`` arrays rather than a pandas index so that
long synthetic calendars (hundreds of thousands of business days) stay
representable. Both arrays are copied and frozen on construction.
"""
from dataclasses import dataclass

import numpy as np

from core.choices import Frequency, Position
from core.exceptions import EmptySeries, InvalidConfig

WEIGHT_SUM_TOLERANCE = 1e-12


def _frozen(values, dtype):
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


def _check_dates(dates, label):
    if dates.ndim != 1:
        raise InvalidConfig(f"{label}: dates must be one-dimensional")
    if len(dates) > 1 and not np.all(dates[1:] > dates[:-1]):
        raise InvalidConfig(f"{label}: dates must be strictly increasing")


@dataclass(frozen=True, eq=False)
class PriceSeries:
    """Dated closing prices for one asset."""

    asset_id: str
    dates: np.ndarray
    closes: np.ndarray

    def __post_init__(self):
        dates = _frozen(self.dates, "datetime64[D]")
        closes = _frozen(self.closes, np.float64)
        if len(dates) == 0:
            raise EmptySeries(f"{self.asset_id}: price series is empty")
        if len(dates) != len(closes):
            raise InvalidConfig(f"{self.asset_id}: {len(dates)} dates for {len(closes)} closes")
        _check_dates(dates, self.asset_id)
        if not np.all(np.isfinite(closes)) or np.any(closes <= 0):
            raise InvalidConfig(f"{self.asset_id}: closes must be finite and strictly positive")
        object.__setattr__(self, "dates", dates)
        object.__setattr__(self, "closes", closes)

    def __len__(self):
        return len(self.dates)

    def __repr__(self):
        return f"PriceSeries({self.asset_id!r}, n={len(self)})"


@dataclass(frozen=True, eq=False)
class ReturnSeries:
    """Simple returns at a stated frequency, dated by the end of each period."""

    asset_id: str
    frequency: Frequency
    dates: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        dates = _frozen(self.dates, "datetime64[D]")
        values = _frozen(self.values, np.float64)
        if len(dates) == 0:
            raise EmptySeries(f"{self.asset_id}: return series is empty")
        if len(dates) != len(values):
            raise InvalidConfig(f"{self.asset_id}: {len(dates)} dates for {len(values)} returns")
        _check_dates(dates, self.asset_id)
        if not np.all(np.isfinite(values)):
            raise InvalidConfig(f"{self.asset_id}: returns must be finite")
        object.__setattr__(self, "frequency", Frequency(self.frequency))
        object.__setattr__(self, "dates", dates)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return len(self.dates)

    def __repr__(self):
        return f"ReturnSeries({self.asset_id!r}, {self.frequency.value}, n={len(self)})"

    def scaled(self, factor):
        return ReturnSeries(self.asset_id, self.frequency, self.dates, self.values * factor)

    def negated(self):
        return self.scaled(-1.0)


@dataclass(frozen=True)
class PortfolioSpec:
    """
    Two-asset weights plus the position held in both assets.

    Weights live in the open interval (0, 1) and sum to one; the position only
    decides which tail defines the VaR, it never changes the return series.
    """

    w1: float
    w2: float
    position: Position = Position.LONG

    def __post_init__(self):
        w1, w2 = float(self.w1), float(self.w2)
        for name, weight in (("w1", w1), ("w2", w2)):
            if not 0.0 < weight < 1.0:
                raise InvalidConfig(f"{name}={weight} must lie strictly between 0 and 1")
        if abs(w1 + w2 - 1.0) > WEIGHT_SUM_TOLERANCE:
            raise InvalidConfig(f"weights ({w1}, {w2}) must sum to 1")
        object.__setattr__(self, "w1", w1)
        object.__setattr__(self, "w2", w2)
        object.__setattr__(self, "position", Position(self.position))

    @classmethod
    def from_w1(cls, w1, position=Position.LONG):
        return cls(w1, 1.0 - w1, position)

    def swapped(self):
        return PortfolioSpec(self.w2, self.w1, self.position)

    def with_position(self, position):
        return PortfolioSpec(self.w1, self.w2, position)

    @property
    def label(self):
        return f"({self.w1:.0%}, {self.w2:.0%})"
