"""
Summaries of how an implied-correlation surface departs from constancy.

Each check mirrors a pattern that real equity data tend to show: correlation
varies across the grid, is higher for long than for short positions, rises
with the probability level on the long side and falls on the short side, and
differs between daily and weekly returns while looking alike across weights.
"""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from core.choices import Position


@dataclass(frozen=True)
class WeightFacts:
    w1: float
    w2: float
    long_above_short: int
    levels: int
    long_above_short_deep: int
    deep_levels: int
    long_slope: float
    short_slope: float
    deepest_spread: float


@dataclass(frozen=True)
class SurfaceFacts:
    frequency: str
    pearson: float
    average_rho: float
    min_rho: float
    max_rho: float
    out_of_range: int
    weights: tuple = field(default_factory=tuple)

    @property
    def spread(self):
        return self.max_rho - self.min_rho

    @property
    def max_spread_gap(self):
        spreads = [facts.deepest_spread for facts in self.weights if not np.isnan(facts.deepest_spread)]
        return float(max(spreads) - min(spreads)) if spreads else float("nan")


@dataclass(frozen=True)
class FactSummary:
    daily: SurfaceFacts
    weekly: Optional[SurfaceFacts] = None

    @property
    def frequency_gap(self):
        if self.weekly is None:
            return None
        return self.weekly.pearson - self.daily.pearson


def _slope(ranks, values):
    # least-squares slope of rho against probability rank
    if len(values) < 2:
        return float("nan")
    return float(np.polyfit(ranks, values, 1)[0])


def _weight_facts(surface, w1, w2, levels, deep=2):
    series = {}
    for position in (Position.LONG, Position.SHORT):
        series[position] = [surface.get(level.p, w1, position) for level in levels]

    pairs = [
        (rank, long_point.rho, short_point.rho)
        for rank, (long_point, short_point) in enumerate(zip(series[Position.LONG], series[Position.SHORT]))
        if long_point is not None and short_point is not None
    ]
    deep_pairs = [pair for pair in pairs if pair[0] >= len(levels) - deep]

    def slope(position):
        points = [(rank, point.rho) for rank, point in enumerate(series[position]) if point is not None]
        return _slope([rank for rank, _ in points], [rho for _, rho in points])

    deepest = pairs[-1] if pairs else None
    return WeightFacts(
        w1=w1,
        w2=w2,
        long_above_short=sum(1 for _, long_rho, short_rho in pairs if long_rho > short_rho),
        levels=len(pairs),
        long_above_short_deep=sum(1 for _, long_rho, short_rho in deep_pairs if long_rho > short_rho),
        deep_levels=len(deep_pairs),
        long_slope=slope(Position.LONG),
        short_slope=slope(Position.SHORT),
        deepest_spread=(deepest[1] - deepest[2]) if deepest else float("nan"),
    )


def surface_facts(surface):
    rhos = np.array([point.rho for point in surface.points]) if surface.points else np.array([np.nan])
    levels = surface.levels()
    return SurfaceFacts(
        frequency=surface.frequency.value,
        pearson=surface.pearson,
        average_rho=float(np.mean(rhos)),
        min_rho=float(np.min(rhos)),
        max_rho=float(np.max(rhos)),
        out_of_range=len(surface.out_of_range),
        weights=tuple(_weight_facts(surface, w1, w2, levels) for w1, w2 in surface.weight_pairs()),
    )


def summarize_facts(daily, weekly=None):
    return FactSummary(
        daily=surface_facts(daily),
        weekly=surface_facts(weekly) if weekly is not None else None,
    )
