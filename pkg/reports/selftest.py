"""
Gaussian constancy check.

On a bivariate normal sample every implied correlation should sit close to the
generating correlation, whatever the level, weights or position. Each point of
the daily preset grid is compared with the generating value; deeper levels rest
on fewer tail observations and get the wider tolerance.
"""
import logging
from dataclasses import dataclass

from django.conf import settings

from core.choices import Frequency
from risk.correlation import build_surface
from risk.grids import preset_grid
from synthetic.config import GeneratorConfig
from synthetic.generators import gen_bivariate_gaussian

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Deviation:
    seed: int
    point: object
    tolerance: float

    @property
    def deviation(self):
        return self.point.rho - self.expected

    @property
    def expected(self):
        return settings.TAILCORR['SELFTEST_RHO']

    @property
    def passed(self):
        return abs(self.deviation) <= self.tolerance


@dataclass(frozen=True)
class SelftestReport:
    rho: float
    n: int
    deviations: tuple

    @property
    def passed(self):
        return all(item.passed for item in self.deviations)

    @property
    def breaches(self):
        return [item for item in self.deviations if not item.passed]


def tolerance_for(p):
    options = settings.TAILCORR
    if p >= options['SELFTEST_TAIL_FROM']:
        return options['SELFTEST_TOLERANCE_TAIL']
    return options['SELFTEST_TOLERANCE_CORE']


def run_selftest(seeds, n=None):
    options = settings.TAILCORR
    n = n or options['SELFTEST_N']
    rho = options['SELFTEST_RHO']
    sigma = options['SELFTEST_SIGMA']
    grid = preset_grid("standard-daily")

    deviations = []
    for seed in seeds:
        cfg = GeneratorConfig(seed=seed, n=n, rho=rho, sigma1=sigma, sigma2=sigma)
        r1, r2 = gen_bivariate_gaussian(cfg)
        surface = build_surface(r1, r2, Frequency.DAILY, grid)
        deviations.extend(Deviation(seed, point, tolerance_for(point.p.p)) for point in surface.points)

    report = SelftestReport(rho=rho, n=n, deviations=tuple(deviations))
    logger.info(
        "Gaussian selftest on seeds %s: %d/%d points within tolerance",
        list(seeds), len(deviations) - len(report.breaches), len(deviations),
    )
    return report


def render_report(report):
    lines = [f"Gaussian constancy selftest: rho={report.rho:.2f} n={report.n}"]
    lines.append(f"{'seed':>6} {'probability':>12} {'weights':>12} {'position':>8} "
                 f"{'rho':>8} {'deviation':>10} {'tolerance':>9}  status")
    for item in report.deviations:
        point = item.point
        lines.append(
            f"{item.seed:>6} {point.p.label:>12} {point.spec.label:>12} {point.spec.position.value:>8} "
            f"{point.rho:>8.4f} {item.deviation:>+10.4f} {item.tolerance:>9.2f}  "
            f"{'ok' if item.passed else 'BREACH'}"
        )
    verdict = "PASS" if report.passed else f"FAIL ({len(report.breaches)} breaching points)"
    lines.append(f"Result: {verdict}")
    return "\n".join(lines) + "\n"
