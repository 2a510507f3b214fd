"""Loading and cleaning of raw rate series from delimited files.

The expected file layout is a header row, a date in the first column
and one or more value columns. Values that fail to parse become absent
records rather than errors; the cleaning step then drops or
forward-fills them according to the policy. All downstream analysis
operates on observation order, so weekend and holiday gaps are simply
not represented.
"""

from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import dataclass, field
from datetime import date, datetime, time
from typing import IO, Sequence

import numpy as np

from .errors import ConfigurationError, InputError

DEFAULT_DATE_FORMAT = "%Y-%m-%d"

MISSING_DROP = "drop"
MISSING_FORWARD_FILL = "forward-fill"
MISSING_POLICIES = (MISSING_DROP, MISSING_FORWARD_FILL)

DUPLICATE_ERROR = "error"
DUPLICATE_KEEP_FIRST = "keep-first"
DUPLICATE_POLICIES = (DUPLICATE_ERROR, DUPLICATE_KEEP_FIRST)


@dataclass(frozen=True)
class RawRecord:
    """One file row: a calendar date and a possibly absent rate value."""

    timestamp: date
    value: float | None


@dataclass(frozen=True)
class CleaningPolicy:
    """How to resolve absent values and duplicate timestamps.

    The defaults (drop missing, error on duplicates) never fabricate
    rate values.
    """

    missing: str = MISSING_DROP
    duplicates: str = DUPLICATE_ERROR

    def __post_init__(self) -> None:
        if self.missing not in MISSING_POLICIES:
            raise ConfigurationError(
                f"missing policy must be one of {MISSING_POLICIES}, got {self.missing!r}"
            )
        if self.duplicates not in DUPLICATE_POLICIES:
            raise ConfigurationError(
                f"duplicate policy must be one of {DUPLICATE_POLICIES}, "
                f"got {self.duplicates!r}"
            )


@dataclass(eq=False)
class TimeSeries:
    """A named series of (date, value) observations.

    Invariants: dates strictly increasing, values finite, length >= 1.
    """

    name: str
    dates: tuple[date, ...]
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        self.dates = tuple(self.dates)
        self.values = np.asarray(self.values, dtype=float)
        if len(self.dates) != self.values.size:
            raise ValueError(
                f"{len(self.dates)} dates but {self.values.size} values"
            )
        if len(self.dates) < 1:
            raise ValueError("a series needs at least one observation")
        for earlier, later in zip(self.dates, self.dates[1:]):
            if earlier >= later:
                raise ValueError(
                    f"timestamps must be strictly increasing: {earlier} !< {later}"
                )
        if not np.isfinite(self.values).all():
            raise ValueError("series values must be finite")

    def __len__(self) -> int:
        return self.values.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return (
            self.name == other.name
            and self.dates == other.dates
            and np.array_equal(self.values, other.values)
        )


def parse_csv(
    source: IO[bytes] | IO[str] | str | os.PathLike,
    date_format: str = DEFAULT_DATE_FORMAT,
    column: str | int = "value",
    delimiter: str = ",",
) -> list[RawRecord]:
    """Read raw records from a delimited file.

    ``source`` may be a path or an open text/byte stream. The first
    column must hold the date; ``column`` selects the value column by
    header name or zero-based index. Unparseable or empty value cells
    become absent records; unparseable dates are an input error.
    """
    with _as_text_stream(source) as stream:
        reader = csv.reader(stream, delimiter=delimiter)
        try:
            header = next(reader)
        except StopIteration:
            raise InputError("malformed header: file is empty") from None
        header = [cell.strip() for cell in header]
        if len(header) < 2 or any(not cell for cell in header):
            raise InputError(
                f"malformed header: need at least a date column and one named "
                f"value column, got {header}"
            )
        value_idx = _resolve_column(header, column)

        records: list[RawRecord] = []
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            timestamp = _parse_date(row[0].strip(), date_format, line_no)
            cell = row[value_idx].strip() if value_idx < len(row) else ""
            records.append(RawRecord(timestamp=timestamp, value=_parse_value(cell)))

    if not records:
        raise InputError("empty input: the file contains a header but no data rows")
    return records


def clean(
    records: Sequence[RawRecord],
    policy: CleaningPolicy = CleaningPolicy(),
    name: str = "series",
) -> TimeSeries:
    """Turn raw records into a valid series under the cleaning policy.

    Records are sorted by timestamp (stable, so file order decides
    among duplicates), duplicates resolved, then absent values dropped
    or forward-filled.
    """
    if not records:
        raise InputError("empty input: no records to clean")
    ordered = sorted(records, key=lambda r: r.timestamp)

    deduped: list[RawRecord] = []
    for record in ordered:
        if deduped and deduped[-1].timestamp == record.timestamp:
            if policy.duplicates == DUPLICATE_ERROR:
                raise InputError(
                    f"duplicate timestamp {record.timestamp.isoformat()} "
                    f"(policy duplicates={DUPLICATE_ERROR!r})"
                )
            continue  # keep-first: stable sort put the first file row first
        deduped.append(record)

    dates: list[date] = []
    values: list[float] = []
    if policy.missing == MISSING_DROP:
        for record in deduped:
            if record.value is not None:
                dates.append(record.timestamp)
                values.append(record.value)
    else:
        if deduped[0].value is None:
            raise InputError(
                "leading gap: forward-fill needs a present first value, but "
                f"{deduped[0].timestamp.isoformat()} is absent"
            )
        last = deduped[0].value
        for record in deduped:
            if record.value is not None:
                last = record.value
            dates.append(record.timestamp)
            values.append(last)

    if not values:
        raise InputError("empty series: all values are absent after cleaning")
    return TimeSeries(name=name, dates=tuple(dates), values=np.array(values))


def load_series(
    source: IO[bytes] | IO[str] | str | os.PathLike,
    name: str,
    date_format: str = DEFAULT_DATE_FORMAT,
    column: str | int = "value",
    delimiter: str = ",",
    policy: CleaningPolicy = CleaningPolicy(),
) -> TimeSeries:
    """parse_csv followed by clean, as one call."""
    records = parse_csv(
        source, date_format=date_format, column=column, delimiter=delimiter
    )
    return clean(records, policy=policy, name=name)


def write_csv(
    series: TimeSeries,
    dest: IO[str] | str | os.PathLike,
    value_column: str = "value",
    date_format: str = DEFAULT_DATE_FORMAT,
) -> None:
    """Serialize a series with full float precision.

    Values use the shortest round-tripping decimal form, so writing and
    re-reading a cleaned series reproduces it exactly.
    """
    text = serialize_csv(series, value_column=value_column, date_format=date_format)
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        with open(dest, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def serialize_csv(
    series: TimeSeries,
    value_column: str = "value",
    date_format: str = DEFAULT_DATE_FORMAT,
) -> str:
    lines = [f"date,{value_column}"]
    for day, value in zip(series.dates, series.values):
        lines.append(f"{day.strftime(date_format)},{float(value)!r}")
    return "\n".join(lines) + "\n"


def _as_text_stream(source: IO[bytes] | IO[str] | str | os.PathLike):
    if isinstance(source, (str, os.PathLike)):
        return open(source, "r", encoding="utf-8", newline="")
    if isinstance(source, io.TextIOBase):
        return _NonClosing(source)
    if hasattr(source, "read"):
        probe = source.read(0)
        if isinstance(probe, bytes):
            wrapper = io.TextIOWrapper(source, encoding="utf-8", newline="")
            return _NonClosing(wrapper, detach=True)
        return _NonClosing(source)
    raise TypeError(f"cannot read from source of type {type(source)!r}")


class _NonClosing:
    """Context wrapper that leaves caller-owned streams open.

    A TextIOWrapper created here is detached on exit so its eventual
    garbage collection cannot close the caller's byte stream.
    """

    def __init__(self, stream, detach: bool = False):
        self._stream = stream
        self._detach = detach

    def __enter__(self):
        return self._stream

    def __exit__(self, *exc_info):
        if self._detach:
            self._stream.detach()
        return False


def _resolve_column(header: list[str], column: str | int) -> int:
    if isinstance(column, int):
        if not 0 <= column < len(header):
            raise ConfigurationError(
                f"column index {column} out of range for header with "
                f"{len(header)} columns"
            )
        idx = column
    else:
        try:
            idx = header.index(column)
        except ValueError:
            raise ConfigurationError(
                f"unknown column {column!r}; header has {header}"
            ) from None
    if idx == 0:
        raise ConfigurationError(
            "the first column holds the date and cannot be the value column"
        )
    return idx


def _parse_date(cell: str, date_format: str, line_no: int) -> date:
    try:
        parsed = datetime.strptime(cell, date_format)
    except ValueError:
        raise InputError(
            f"line {line_no}: date {cell!r} does not parse under format "
            f"{date_format!r}"
        ) from None
    if parsed.time() != time.min:
        raise InputError(
            f"line {line_no}: intraday timestamp {cell!r} rejected; dates are "
            "stored at day granularity"
        )
    return parsed.date()


def _parse_value(cell: str) -> float | None:
    if not cell:
        return None
    try:
        value = float(cell)
    except ValueError:
        return None
    if not math.isfinite(value):
        return None
    return value
