"""
What a report command runs on: a data source, a frequency and a grid.

Exactly one data source is allowed, either two price CSV files or a synthetic
generator config. Synthetic returns are generated daily; weekly returns are
taken from the compounded price paths the same way as for file data.
"""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from core.choices import Frequency
from core.exceptions import InvalidConfig
from marketdata.loaders import load_csv
from marketdata.transforms import align, price_path, returns_at
from risk.correlation import build_surface
from risk.grids import is_preset, preset_frequency, resolve_grid
from risk.models import MAX_STORED_SEED, SurfaceRun
from synthetic.config import load_generator_config
from synthetic.generators import generate

logger = logging.getLogger(__name__)

DEFAULT_GRID = {
    Frequency.DAILY: "standard-daily",
    Frequency.WEEKLY: "standard-weekly",
}


@dataclass(frozen=True)
class RunConfig:
    asset1: Optional[Path] = None
    asset2: Optional[Path] = None
    synthetic: Optional[Path] = None
    frequency: Optional[Frequency] = None
    grid: Optional[str] = None
    weights: tuple = ()
    position: str = "both"
    output_format: str = "text"
    out: Optional[Path] = None
    seed: Optional[int] = None

    def __post_init__(self):
        has_files = self.asset1 is not None or self.asset2 is not None
        if has_files == (self.synthetic is not None):
            raise InvalidConfig("give either --asset1/--asset2 or --synthetic, not both or neither")
        if has_files and (self.asset1 is None or self.asset2 is None):
            raise InvalidConfig("--asset1 and --asset2 must be given together")
        if self.frequency is not None:
            object.__setattr__(self, "frequency", Frequency(self.frequency))

    @property
    def resolved_frequency(self):
        if self.frequency is not None:
            return self.frequency
        if self.grid and is_preset(self.grid):
            return preset_frequency(self.grid)
        return Frequency.DAILY

    @property
    def grid_name(self):
        return self.grid or DEFAULT_GRID[self.resolved_frequency]

    @property
    def source_label(self):
        if self.synthetic is not None:
            return f"synthetic:{Path(self.synthetic).name}"
        return f"{Path(self.asset1).name},{Path(self.asset2).name}"

    def build_grid(self, frequency=None):
        frequency = Frequency(frequency or self.resolved_frequency)
        name = self.grid or DEFAULT_GRID[frequency]
        return resolve_grid(name, frequency, self.weights or None, self.position)

    def generator_config(self):
        return load_generator_config(self.synthetic, seed=self.seed)

    @property
    def run_seed(self):
        if self.synthetic is None:
            return None
        return self.generator_config().seed


def load_returns(cfg, frequency=None):
    """Aligned return pair for the run's data source at ``frequency``."""
    frequency = Frequency(frequency or cfg.resolved_frequency)
    if cfg.synthetic is not None:
        r1, r2 = generate(cfg.generator_config())
        if frequency == Frequency.DAILY:
            return r1, r2
        prices = price_path(r1), price_path(r2)
    else:
        prices = align(load_csv(cfg.asset1), load_csv(cfg.asset2))
    return returns_at(prices[0], frequency), returns_at(prices[1], frequency)


def evaluate(cfg, frequency=None, grid=None):
    """Implied correlation surface for ``cfg`` on ``grid`` (default: the run's own grid)."""
    frequency = Frequency(frequency or cfg.resolved_frequency)
    grid = cfg.build_grid(frequency) if grid is None else grid
    if not grid:
        raise InvalidConfig("grid is empty after applying the weight and position filters")
    r1, r2 = load_returns(cfg, frequency)
    return build_surface(r1, r2, frequency, grid)


def storable_seed(cfg):
    seed = cfg.run_seed
    if seed is not None and seed > MAX_STORED_SEED:
        raise InvalidConfig(f"--save stores seeds below 2**63, got {seed}")
    return seed


def save_run(cfg, surface):
    return SurfaceRun.objects.create_from_surface(
        surface, source=cfg.source_label, grid_name=cfg.grid_name, seed=storable_seed(cfg),
    )
