"""
CSV ingestion and export for closing prices.

Format: UTF-8, header ``date,close``, ISO dates, ``.`` decimal point and no
thousands separators. Bad rows are rejected with their line number; nothing is
repaired.
"""
import io
import logging
from datetime import datetime
from pathlib import Path

import numpy as np
import pandas as pd

from core.exceptions import DataFileNotFound, EmptySeries, MalformedRow

from .series import PriceSeries

logger = logging.getLogger(__name__)

HEADER = ["date", "close"]
DATE_FORMAT = "%Y-%m-%d"
# header occupies line 1
FIRST_DATA_LINE = 2


def load_csv(path, asset_id=None):
    path = Path(path)
    if not path.is_file():
        raise DataFileNotFound(f"{path}: no such file")
    asset_id = asset_id or path.stem

    frame = read_frame(path)
    if frame is None:
        raise EmptySeries(f"{path}: file is empty")

    if list(frame.columns) != HEADER:
        raise MalformedRow(f"expected header 'date,close', got {','.join(frame.columns)!r}", line=1)
    if frame.empty:
        raise EmptySeries(f"{path}: no observations")

    closes = pd.to_numeric(frame["close"], errors="coerce").to_numpy(dtype=np.float64)
    dates = []

    for offset, raw in enumerate(frame.itertuples(index=False)):
        line = offset + FIRST_DATA_LINE
        if _is_blank(raw.date) and _is_blank(raw.close):
            raise MalformedRow("blank line", line=line)
        day = _parse_date(raw.date)
        if day is None:
            raise MalformedRow(f"unparsable date {raw.date!r}", line=line)
        close = closes[offset]
        if not np.isfinite(close):
            raise MalformedRow(f"unparsable price {raw.close!r}", line=line)
        if close <= 0:
            raise MalformedRow(f"non-positive price {raw.close!r}", line=line)
        if dates and day <= dates[-1]:
            raise MalformedRow(f"date {raw.date} is not after {dates[-1].isoformat()}", line=line)
        dates.append(day)

    series = PriceSeries(asset_id, np.array(dates, dtype="datetime64[D]"), closes)
    logger.info("Loaded %d closes for %s from %s", len(series), asset_id, path)
    return series


def dump_csv(series, path):
    path = Path(path)
    frame = pd.DataFrame({
        "date": np.datetime_as_string(series.dates, unit="D"),
        "close": [repr(float(close)) for close in series.closes],
    })
    frame.to_csv(path, index=False, lineterminator="\n", encoding="utf-8")
    logger.info("Wrote %d closes for %s to %s", len(series), series.asset_id, path)
    return path


def read_frame(path):
    """
    All cells of a UTF-8 CSV file as strings, one row per physical line.

    Blank lines are kept as empty rows so callers can reject them at their
    real line number. Returns None for an empty file.
    """
    raw = Path(path).read_bytes()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = raw[:exc.start].count(b"\n") + 1
        raise MalformedRow(f"{path}: not valid UTF-8 (byte 0x{raw[exc.start]:02x})", line=line)
    try:
        return pd.read_csv(io.StringIO(text), dtype=str, keep_default_na=False, skip_blank_lines=False)
    except pd.errors.EmptyDataError:
        return None
    except pd.errors.ParserError as exc:
        raise MalformedRow(f"{path}: {exc}")


def _is_blank(value):
    return not isinstance(value, str) or not value.strip()


def _parse_date(text):
    # strptime alone accepts unpadded fields such as 2003-1-2
    if not isinstance(text, str) or len(text) != 10:
        return None
    try:
        return datetime.strptime(text, DATE_FORMAT).date()
    except ValueError:
        return None
