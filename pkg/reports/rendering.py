"""
Renderers for implied-correlation surfaces.

All renderers are pure functions of the surface and return text, so the same
surface always yields the same bytes. Probabilities are shown in percent with
two decimals and correlations with three; values outside [-1, 1] carry a
trailing ``*`` in the text table and ``in_range=false`` in CSV.
"""
import io

import numpy as np
import pandas as pd
from django.conf import settings
from django.template.loader import render_to_string
from rich import box
from rich.console import Console
from rich.table import Table

from core.choices import Position

CSV_COLUMNS = ["probability", "waiting_period", "w1", "w2", "position", "rho", "in_range"]
OUT_OF_RANGE_MARKER = "*"
SERIES_COLOURS = {
    Position.LONG: "#c0392b",
    Position.SHORT: "#2471a3",
}
TABLE_WIDTH = 160
MAX_Y_INTERVALS = 10
MIN_Y_STEP = 0.2


def format_rho(point):
    if point is None:
        return "-"
    marker = "" if point.in_range else OUT_OF_RANGE_MARKER
    return f"{point.rho:.3f}{marker}"


def surface_rows(surface):
    for point in surface.points:
        yield {
            "probability": repr(point.p.p),
            "waiting_period": "" if point.p.waiting_periods is None else str(point.p.waiting_periods),
            "w1": repr(point.spec.w1),
            "w2": repr(point.spec.w2),
            "position": point.spec.position.value,
            "rho": repr(point.rho),
            "in_range": "true" if point.in_range else "false",
        }


def render_csv(surface):
    frame = pd.DataFrame(list(surface_rows(surface)), columns=CSV_COLUMNS, dtype=str)
    return frame.to_csv(index=False, lineterminator="\n")


def render_text(surface, title=None):
    """Rows are probability levels, column groups weight pairs, sub-columns positions."""
    weights = surface.weight_pairs()
    positions = surface.positions()
    table = Table(
        title=title or f"Implied correlation from {surface.frequency.label.lower()} VaR",
        caption=(
            f"Pearson correlation {surface.pearson:.3f} on {surface.n_obs} observations"
            f"  ({OUT_OF_RANGE_MARKER} outside [-1, 1])"
        ),
        box=box.ASCII,
        show_lines=False,
    )
    table.add_column("Probability (waiting period)", justify="left", no_wrap=True)
    for w1, w2 in weights:
        for position in positions:
            table.add_column(f"({w1:.0%}, {w2:.0%})\n{position.label}", justify="right", no_wrap=True)

    for level in surface.levels():
        cells = [
            format_rho(surface.get(level.p, w1, position))
            for w1, _ in weights
            for position in positions
        ]
        table.add_row(level.annotated_label, *cells)

    buffer = io.StringIO()
    console = Console(
        file=buffer,
        width=TABLE_WIDTH,
        color_system=None,
        force_terminal=False,
        highlight=False,
        emoji=False,
        legacy_windows=False,
    )
    console.print(table)
    return buffer.getvalue()


def _tick_step(span):
    """Smallest 1-2-5 step of at least MIN_Y_STEP that covers ``span`` in MAX_Y_INTERVALS intervals."""
    raw = span / MAX_Y_INTERVALS
    if raw <= MIN_Y_STEP:
        return MIN_Y_STEP
    magnitude = 10.0 ** np.floor(np.log10(raw))
    for multiple in (1, 2, 5, 10):
        if multiple * magnitude >= raw:
            return multiple * magnitude


def _axis_ticks(low, high, step=None):
    step = step or _tick_step(high - low)
    start = np.floor(low / step) * step
    stop = np.ceil(high / step) * step
    return [round(value, 10) for value in np.arange(start, stop + step / 2, step)]


def render_svg(surface, width=None, height=None):
    """Line chart of implied correlation against waiting period, one line per position."""
    options = settings.TAILCORR
    width = width or options['FIGURE_WIDTH']
    height = height or options['FIGURE_HEIGHT']
    left, right, top, bottom = 70, 30, 50, 60
    plot_width, plot_height = width - left - right, height - top - bottom

    levels = surface.levels()
    rhos = [point.rho for point in surface.points]
    ticks = _axis_ticks(min([0.0, *rhos]), max([1.0, *rhos]))
    y_low, y_high = ticks[0], ticks[-1]
    decimals = 1 if ticks[1] - ticks[0] < 1 else 0

    def x_at(index):
        if len(levels) == 1:
            return left + plot_width / 2
        return left + index * plot_width / (len(levels) - 1)

    def y_at(rho):
        return top + (y_high - rho) / (y_high - y_low) * plot_height

    series = []
    for position in surface.positions():
        coordinates = []
        for index, level in enumerate(levels):
            for point in surface.points:
                if point.p.p == level.p and point.spec.position == position:
                    coordinates.append(f"{x_at(index):.1f},{y_at(point.rho):.1f}")
        series.append({
            "label": position.label,
            "colour": SERIES_COLOURS[position],
            "points": " ".join(coordinates),
        })

    weights = surface.weight_pairs()
    context = {
        "width": width,
        "height": height,
        "left": left,
        "top": top,
        "right_edge": left + plot_width,
        "bottom_edge": top + plot_height,
        "title": (
            f"Implied correlation from {surface.frequency.label.lower()} VaR"
            + (f", weights ({weights[0][0]:.0%}, {weights[0][1]:.0%})" if len(weights) == 1 else "")
        ),
        "x_ticks": [
            {
                "x": f"{x_at(index):.1f}",
                "label": level.period.label if level.period else level.label,
            }
            for index, level in enumerate(levels)
        ],
        "y_ticks": [{"y": f"{y_at(value):.1f}", "label": f"{value:.{decimals}f}"} for value in ticks],
        "series": series,
        "legend": [
            {"y": top + 16 * index, "label": line["label"], "colour": line["colour"]}
            for index, line in enumerate(series)
        ],
    }
    return render_to_string("reports/figure.svg", context)
