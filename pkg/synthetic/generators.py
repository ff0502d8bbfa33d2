"""
Seeded bivariate return generators.

Uniforms come from numpy's PCG64 bit generator and are mapped to normals with
the inverse normal CDF (``scipy.special.ndtri``), so every observation consumes
a fixed number of draws and a seed reproduces the same series on any platform.

Draw layout per config:
    1. an (n, 2) block of uniforms -> the two standard normals of each pair;
    2. crash mixture only: n further uniforms -> regime of each pair.
"""
import logging

import numpy as np
from scipy.special import ndtri

from core.choices import Frequency
from core.exceptions import InvalidConfig
from marketdata.series import ReturnSeries
from marketdata.transforms import business_days

from .config import Regime

logger = logging.getLogger(__name__)

ASSET_IDS = ("asset1", "asset2")
_SMALLEST_UNIFORM = np.finfo(np.float64).tiny


def _rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def _standard_normals(rng, n):
    uniforms = rng.random((n, 2))
    # Generator.random is [0, 1); ndtri(0) is -inf
    np.maximum(uniforms, _SMALLEST_UNIFORM, out=uniforms)
    normals = ndtri(uniforms)
    return normals[:, 0], normals[:, 1]


def _correlate(z1, z2, rho):
    return rho * z1 + np.sqrt(1.0 - rho * rho) * z2


def _as_series(cfg, r1, r2):
    dates = business_days(cfg.n)
    return (
        ReturnSeries(ASSET_IDS[0], Frequency.DAILY, dates, r1),
        ReturnSeries(ASSET_IDS[1], Frequency.DAILY, dates, r2),
    )


def gen_bivariate_gaussian(cfg):
    if cfg.regime != Regime.GAUSSIAN:
        raise InvalidConfig(f"gen_bivariate_gaussian needs the gaussian regime, got {cfg.regime.value}")
    rng = _rng(cfg.seed)
    z1, z2 = _standard_normals(rng, cfg.n)
    r1 = cfg.mu1 + cfg.sigma1 * z1
    r2 = cfg.mu2 + cfg.sigma2 * _correlate(z1, z2, cfg.rho)
    logger.debug("Generated %d gaussian pairs (seed=%d, rho=%.3f)", cfg.n, cfg.seed, cfg.rho)
    return _as_series(cfg, r1, r2)


def gen_crash_mixture(cfg):
    if cfg.regime != Regime.CRASH_MIXTURE:
        raise InvalidConfig(f"gen_crash_mixture needs the crash_mixture regime, got {cfg.regime.value}")
    rng = _rng(cfg.seed)
    z1, z2 = _standard_normals(rng, cfg.n)
    crash = rng.random(cfg.n) < cfg.crash_prob

    rho = np.where(crash, cfg.crash_rho, cfg.rho)
    shift = np.where(crash, cfg.crash_shift, 0.0)
    r1 = cfg.mu1 + shift + cfg.sigma1 * z1
    r2 = cfg.mu2 + shift + cfg.sigma2 * _correlate(z1, z2, rho)
    logger.debug(
        "Generated %d mixture pairs (seed=%d, %d crash draws)", cfg.n, cfg.seed, int(crash.sum())
    )
    return _as_series(cfg, r1, r2)


def generate(cfg):
    if cfg.regime == Regime.CRASH_MIXTURE:
        return gen_crash_mixture(cfg)
    return gen_bivariate_gaussian(cfg)
