try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, fields, replace
from pathlib import Path

from django.db import models

from core.exceptions import DataFileNotFound, InvalidConfig

MAX_SEED = 2 ** 64 - 1


class Regime(models.TextChoices):
    GAUSSIAN = "gaussian", "Gaussian"
    CRASH_MIXTURE = "crash_mixture", "Crash mixture"


@dataclass(frozen=True)
class GeneratorConfig:
    """
    Parameters of a seeded bivariate return generator.

    Volatilities and means are per period. The ``crash_*`` fields only matter
    for the crash-mixture regime, where a fraction ``crash_prob`` of the
    observations comes from a more correlated, downward-shifted normal.
    """

    seed: int = 1
    n: int = 10_000
    rho: float = 0.0
    sigma1: float = 0.01
    sigma2: float = 0.01
    mu1: float = 0.0
    mu2: float = 0.0
    regime: Regime = Regime.GAUSSIAN
    crash_prob: float = 0.0
    crash_rho: float = 0.9
    crash_shift: float = 0.0

    def __post_init__(self):
        try:
            object.__setattr__(self, "regime", Regime(self.regime))
        except ValueError:
            raise InvalidConfig(f"unknown regime {self.regime!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed <= MAX_SEED:
            raise InvalidConfig(f"seed {self.seed!r} must be an unsigned 64-bit integer")
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidConfig(f"sample size {self.n!r} must be a positive integer")
        if not -1.0 <= self.rho <= 1.0:
            raise InvalidConfig(f"rho {self.rho} outside [-1, 1]")
        if self.sigma1 <= 0 or self.sigma2 <= 0:
            raise InvalidConfig("volatilities must be positive")
        if self.regime == Regime.CRASH_MIXTURE:
            if not 0.0 < self.crash_prob < 1.0:
                raise InvalidConfig(f"crash_prob {self.crash_prob} must lie in (0, 1) for a crash mixture")
            if not -1.0 <= self.crash_rho <= 1.0:
                raise InvalidConfig(f"crash_rho {self.crash_rho} outside [-1, 1]")
            if self.crash_shift > 0:
                raise InvalidConfig(f"crash_shift {self.crash_shift} must not be positive")

    def with_seed(self, seed):
        return replace(self, seed=seed)

    def with_n(self, n):
        return replace(self, n=n)


def load_generator_config(path, **overrides):
    """Read a TOML file; keys may sit at top level or under ``[generator]``."""
    path = Path(path)
    if not path.is_file():
        raise DataFileNotFound(f"{path}: no such generator config")
    try:
        with path.open("rb") as handle:
            document = tomllib.load(handle)
    except tomllib.TOMLDecodeError as exc:
        raise InvalidConfig(f"{path}: {exc}")

    values = document.get("generator", document)
    known = {item.name for item in fields(GeneratorConfig)}
    unknown = set(values) - known
    if unknown:
        raise InvalidConfig(f"{path}: unknown generator keys {', '.join(sorted(unknown))}")
    values = {**values, **{key: value for key, value in overrides.items() if value is not None}}
    return GeneratorConfig(**values)
