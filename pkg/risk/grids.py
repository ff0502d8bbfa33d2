"""
Experiment grids: which (probability level, weights, position) points to evaluate.

Named presets reproduce the published layout; any other grid comes from a CSV
file with header ``probability,w1,w2,position`` where ``probability`` is either
a decimal in (0, 1) or a waiting-period name such as ``year``.
"""
from pathlib import Path

from core.choices import Frequency, Position, WaitingPeriod
from core.exceptions import DataFileNotFound, InvalidConfig, MalformedRow, UnsupportedCombination
from marketdata.loaders import read_frame
from marketdata.series import PortfolioSpec

from .correlation import GridPoint
from .var import CALENDAR, ProbabilityLevel, waiting_period_to_probability

STANDARD_WEIGHTS = ((0.25, 0.75), (0.5, 0.5), (0.75, 0.25))

PRESETS = {
    "standard-daily": Frequency.DAILY,
    "standard-weekly": Frequency.WEEKLY,
}
PRESET_ALIASES = {
    "paper-daily": "standard-daily",
    "paper-weekly": "standard-weekly",
    "paper-grid-daily": "standard-daily",
    "paper-grid-weekly": "standard-weekly",
}

GRID_FILE_HEADER = ["probability", "w1", "w2", "position"]


def standard_levels(frequency):
    frequency = Frequency(frequency)
    return [waiting_period_to_probability(frequency, period) for period in CALENDAR[frequency]]


def make_grid(levels, weights=STANDARD_WEIGHTS, positions=(Position.LONG, Position.SHORT)):
    """Cartesian grid ordered by level, then weights, then position."""
    return [
        GridPoint(level, PortfolioSpec(w1, w2, position))
        for level in levels
        for w1, w2 in weights
        for position in positions
    ]


def preset_grid(name):
    name = PRESET_ALIASES.get(name, name)
    if name not in PRESETS:
        raise InvalidConfig(f"unknown grid preset {name!r}; choose from {', '.join(sorted(PRESETS))}")
    return make_grid(standard_levels(PRESETS[name]))


def is_preset(name):
    return PRESET_ALIASES.get(name, name) in PRESETS


def preset_frequency(name):
    return PRESETS[PRESET_ALIASES.get(name, name)]


def parse_level(text, frequency):
    text = text.strip()
    if text in WaitingPeriod.values:
        return waiting_period_to_probability(frequency, text)
    try:
        return ProbabilityLevel(float(text))
    except ValueError:
        raise UnsupportedCombination(f"{text!r} is neither a probability nor a waiting period")


def load_grid(path, frequency):
    path = Path(path)
    if not path.is_file():
        raise DataFileNotFound(f"{path}: no such grid file")
    frame = read_frame(path)
    if frame is None or list(frame.columns) != GRID_FILE_HEADER:
        raise MalformedRow(f"grid header must be {','.join(GRID_FILE_HEADER)}", line=1)

    grid = []
    for offset, row in enumerate(frame.itertuples(index=False)):
        if not any(isinstance(cell, str) and cell.strip() for cell in row):
            raise MalformedRow("blank line", line=offset + 2)
        if not all(isinstance(cell, str) and cell.strip() for cell in row):
            raise MalformedRow("missing field", line=offset + 2)
        try:
            level = parse_level(row.probability, frequency)
            spec = PortfolioSpec(float(row.w1), float(row.w2), Position(row.position.strip()))
        except ValueError as exc:
            raise MalformedRow(str(exc), line=offset + 2)
        grid.append(GridPoint(level, spec))
    return grid


def filter_grid(grid, weights=None, position=None):
    """Keep points matching the requested weight pairs and position (``both`` keeps all)."""
    if weights:
        wanted = {round(w1, 12) for w1, _ in weights}
        grid = [point for point in grid if round(point.spec.w1, 12) in wanted]
    if position and position != "both":
        grid = [point for point in grid if point.spec.position == Position(position)]
    return grid


def resolve_grid(name, frequency, weights=None, position=None):
    """
    Grid for a preset name or a grid file, narrowed by the weight and position filters.

    For presets, explicit ``weights`` replace the preset's weight pairs; for
    grid files they select among the rows.
    """
    if is_preset(name):
        if preset_frequency(name) != Frequency(frequency):
            raise InvalidConfig(f"grid {name!r} is defined for {preset_frequency(name).value} returns")
        levels = standard_levels(frequency)
        grid = make_grid(levels, weights or STANDARD_WEIGHTS)
        return filter_grid(grid, position=position)
    return filter_grid(load_grid(name, frequency), weights, position)
