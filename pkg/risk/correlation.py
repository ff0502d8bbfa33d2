"""
Correlation implied by Value-at-Risk.

The risk-factor approach aggregates individual VaRs with the quadratic formula

    VaR_agg = sqrt(w1^2 V1^2 + w2^2 V2^2 + 2 w1 w2 rho V1 V2)

and ``implied_correlation`` solves the same formula for ``rho`` given the VaR
of the portfolio return series. Under joint normality both approaches agree and
the implied value equals the Pearson coefficient at every level, weight and
position; on real data it does not, which is what a surface exposes.
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from core.choices import Frequency, Position, VarMethod
from core.exceptions import (
    ConstantSeries,
    DegenerateVar,
    InsufficientSample,
    InvalidConfig,
    MismatchedInputs,
    TooShortSeries,
)
from marketdata.series import PortfolioSpec
from marketdata.transforms import check_paired, portfolio_returns

from .var import ProbabilityLevel, VarEstimate, historical_var

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GridPoint:
    level: ProbabilityLevel
    spec: PortfolioSpec

    @property
    def key(self):
        return (self.level.p, self.spec.w1, self.spec.position)

    def __str__(self):
        return f"p={self.level.label} w={self.spec.label} {self.spec.position.value}"


@dataclass(frozen=True)
class ImpliedCorrelationPoint:
    rho: float
    frequency: Frequency
    p: ProbabilityLevel
    spec: PortfolioSpec
    var_asset1: Optional[float] = None
    var_asset2: Optional[float] = None
    var_portfolio: Optional[float] = None

    @property
    def in_range(self):
        return -1.0 <= self.rho <= 1.0

    @property
    def key(self):
        return (self.p.p, self.spec.w1, self.spec.position)


@dataclass(frozen=True)
class CorrelationSurface:
    frequency: Frequency
    points: tuple
    pearson: float
    n_obs: int = 0

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "frequency", Frequency(self.frequency))
        keys = [point.key for point in self.points]
        if len(set(keys)) != len(keys):
            raise InvalidConfig("surface contains duplicate (probability, weights, position) points")
        if not -1.0 <= self.pearson <= 1.0:
            raise InvalidConfig(f"Pearson coefficient {self.pearson} outside [-1, 1]")

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def levels(self):
        seen = {}
        for point in self.points:
            seen.setdefault(point.p.p, point.p)
        return sorted(seen.values(), key=lambda level: level.p)

    def weight_pairs(self):
        seen = {}
        for point in self.points:
            seen.setdefault(point.spec.w1, (point.spec.w1, point.spec.w2))
        return [seen[w1] for w1 in sorted(seen)]

    def positions(self):
        present = {point.spec.position for point in self.points}
        return [position for position in Position if position in present]

    def get(self, p, w1, position):
        for point in self.points:
            if point.key == (p, w1, Position(position)):
                return point
        return None

    def restricted_to(self, w1):
        return CorrelationSurface(
            self.frequency,
            [point for point in self.points if point.spec.w1 == w1],
            self.pearson,
            self.n_obs,
        )

    @property
    def out_of_range(self):
        return [point for point in self.points if not point.in_range]

    @property
    def average_rho(self):
        return float(np.mean([point.rho for point in self.points])) if self.points else math.nan


def _check_compatible(*estimates):
    first = estimates[0]
    for other in estimates[1:]:
        if other.p.p != first.p.p or other.position != first.position:
            raise MismatchedInputs(
                f"VaR at {first.p.label} {first.position.value} cannot be combined with "
                f"{other.p.label} {other.position.value}"
            )


def aggregate_var(v1, v2, spec, rho):
    _check_compatible(v1, v2)
    if not -1.0 <= rho <= 1.0:
        raise InvalidConfig(f"correlation {rho} outside [-1, 1]")
    radicand = (
        spec.w1 ** 2 * v1.value ** 2
        + spec.w2 ** 2 * v2.value ** 2
        + 2.0 * spec.w1 * spec.w2 * rho * v1.value * v2.value
    )
    return VarEstimate(
        value=math.sqrt(max(radicand, 0.0)),
        p=v1.p,
        position=v1.position,
        method=VarMethod.AGGREGATED,
        n_obs=min(v1.n_obs, v2.n_obs),
    )


def implied_correlation(v_port, v1, v2, spec, frequency=Frequency.DAILY):
    _check_compatible(v_port, v1, v2)
    if v1.value <= 0.0 or v2.value <= 0.0:
        raise DegenerateVar(
            f"individual VaR of zero at {v1.p.label} {v1.position.value} "
            f"({v1.value:.6g}, {v2.value:.6g}) leaves the correlation undetermined"
        )
    w1, w2 = spec.w1, spec.w2
    numerator = v_port.value ** 2 - w1 ** 2 * v1.value ** 2 - w2 ** 2 * v2.value ** 2
    rho = numerator / (2.0 * w1 * w2 * v1.value * v2.value)
    return ImpliedCorrelationPoint(
        rho=rho,
        frequency=Frequency(frequency),
        p=v1.p,
        spec=spec.with_position(v1.position),
        var_asset1=v1.value,
        var_asset2=v2.value,
        var_portfolio=v_port.value,
    )


def pearson_correlation(r1, r2):
    check_paired(r1, r2)
    if len(r1) < 2:
        raise TooShortSeries(f"Pearson correlation needs at least 2 observations, got {len(r1)}")
    for series in (r1, r2):
        if np.ptp(series.values) == 0.0:
            raise ConstantSeries(f"{series.asset_id} is constant; correlation is undefined")
    rho = np.corrcoef(r1.values, r2.values)[0, 1]
    return float(np.clip(rho, -1.0, 1.0))


def build_surface(r1, r2, frequency, grid):
    """
    Implied correlation at every grid point, in grid order.

    Individual VaRs depend only on (level, position) and portfolio series only
    on the weights, so both are computed once and reused across the grid.
    """
    frequency = Frequency(frequency)
    check_paired(r1, r2)
    if r1.frequency != frequency:
        raise InvalidConfig(f"returns are {r1.frequency.value} but a {frequency.value} surface was requested")

    individual = {}
    portfolios = {}
    points = []
    for point in grid:
        level, spec = point.level, point.spec
        try:
            key = (level.p, spec.position)
            if key not in individual:
                individual[key] = (
                    historical_var(r1, level, spec.position),
                    historical_var(r2, level, spec.position),
                )
            v1, v2 = individual[key]
            if spec.w1 not in portfolios:
                portfolios[spec.w1] = portfolio_returns(r1, r2, spec)
            v_port = historical_var(portfolios[spec.w1], level, spec.position)
            implied = implied_correlation(v_port, v1, v2, spec, frequency)
        except InsufficientSample as exc:
            raise InsufficientSample(f"grid point {point}: {exc}", grid_point=point)
        except DegenerateVar as exc:
            raise DegenerateVar(f"grid point {point}: {exc}", grid_point=point)
        logger.debug("%s -> rho=%.6f", point, implied.rho)
        points.append(implied)

    surface = CorrelationSurface(frequency, points, pearson_correlation(r1, r2), len(r1))
    if surface.out_of_range:
        logger.warning(
            "%d of %d implied correlations fall outside [-1, 1]", len(surface.out_of_range), len(surface)
        )
    logger.info("Built %s surface with %d points on %d observations", frequency.value, len(surface), len(r1))
    return surface
