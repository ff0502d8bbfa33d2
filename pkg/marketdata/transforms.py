"""
Pure functions for aligning price series and building return series.

Functions never mutate their inputs; every result is a fresh immutable series.
"""
import logging

import numpy as np

from core.choices import Frequency
from core.exceptions import DateMismatch, EmptyIntersection, FrequencyMismatch, TooShortSeries

from .series import PriceSeries, ReturnSeries

logger = logging.getLogger(__name__)

# 1970-01-01 was a Thursday
_EPOCH_WEEKDAY = 3
SYNTHETIC_CALENDAR_START = np.datetime64("1900-01-01", "D")


def align(a, b):
    """Restrict both series to the dates they share."""
    common, index_a, index_b = np.intersect1d(a.dates, b.dates, assume_unique=True, return_indices=True)
    if len(common) == 0:
        raise EmptyIntersection(f"{a.asset_id} and {b.asset_id} share no dates")

    dropped_a, dropped_b = len(a) - len(common), len(b) - len(common)
    if dropped_a or dropped_b:
        logger.warning(
            "Aligned %s/%s on %d dates (dropped %d and %d)",
            a.asset_id, b.asset_id, len(common), dropped_a, dropped_b,
        )
    return (
        PriceSeries(a.asset_id, common, a.closes[index_a]),
        PriceSeries(b.asset_id, common, b.closes[index_b]),
    )


def to_returns(prices, frequency=Frequency.DAILY):
    if len(prices) < 2:
        raise TooShortSeries(f"{prices.asset_id}: need at least 2 closes, got {len(prices)}")
    closes = prices.closes
    return ReturnSeries(prices.asset_id, frequency, prices.dates[1:], closes[1:] / closes[:-1] - 1.0)


def iso_week_start(dates):
    """Monday of the ISO week containing each date."""
    days = dates.astype(np.int64)
    return dates - ((days + _EPOCH_WEEKDAY) % 7).astype("timedelta64[D]")


def resample_weekly(prices):
    """Keep the last available close of every ISO week."""
    if len(prices) < 2:
        raise TooShortSeries(f"{prices.asset_id}: need at least 2 closes, got {len(prices)}")
    weeks = iso_week_start(prices.dates)
    is_last = np.append(weeks[1:] != weeks[:-1], True)
    return PriceSeries(prices.asset_id, prices.dates[is_last], prices.closes[is_last])


def weekly_returns(prices):
    return to_returns(resample_weekly(prices), frequency=Frequency.WEEKLY)


def returns_at(prices, frequency):
    if Frequency(frequency) == Frequency.WEEKLY:
        return weekly_returns(prices)
    return to_returns(prices)


def check_paired(r1, r2):
    if r1.frequency != r2.frequency:
        raise FrequencyMismatch(
            f"{r1.asset_id} is {r1.frequency.value} but {r2.asset_id} is {r2.frequency.value}"
        )
    if len(r1) != len(r2) or not np.array_equal(r1.dates, r2.dates):
        raise DateMismatch(f"{r1.asset_id} and {r2.asset_id} are not observed on the same dates")


def portfolio_returns(r1, r2, spec):
    check_paired(r1, r2)
    values = spec.w1 * r1.values + spec.w2 * r2.values
    return ReturnSeries(f"{r1.asset_id}+{r2.asset_id}", r1.frequency, r1.dates, values)


def price_path(returns, base=100.0):
    """
    Compound returns into closes starting from ``base``.

    The base close is dated one business day before the first return.
    """
    first = np.busday_offset(returns.dates[0], -1, roll="backward")
    closes = base * np.cumprod(np.concatenate(([1.0], 1.0 + returns.values)))
    dates = np.concatenate(([first], returns.dates))
    return PriceSeries(returns.asset_id, dates, closes)


def business_days(n, start=SYNTHETIC_CALENDAR_START):
    return np.busday_offset(start, np.arange(n), roll="forward")
