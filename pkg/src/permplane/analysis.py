"""Sliding-window engine: quantifier trajectories and drift flags.

Windows are anchored at the start of the series and advance by a fixed
step; a trailing remainder shorter than a full window is dropped so
every window stays statistically comparable. Each window contributes
one point to the complexity-entropy plane, and a trajectory is the
ordered sequence of those points.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from typing import Iterator

import numpy as np

from .errors import ConfigurationError, InsufficientDataError
from .infotheory import CecpPoint, Quantifiers, quantifiers_of
from .ingest import TimeSeries
from .ordinal import OrdinalConfig, pattern_distribution

PATTERNS_PER_SYMBOL = 5  # each of the D! patterns should be observable ~5 times


@dataclass(frozen=True)
class WindowSpec:
    """Sliding-window geometry: observations per window and step between starts."""

    length: int = 500
    step: int = 30

    def __post_init__(self) -> None:
        if self.length < 2:
            raise ConfigurationError(f"window length must be >= 2, got {self.length}")
        if self.step < 1:
            raise ConfigurationError(f"window step must be >= 1, got {self.step}")


@dataclass(frozen=True)
class WindowResult:
    """Quantifiers of one window, with its 1-based index and date span."""

    index: int
    start_date: date
    end_date: date
    quantifiers: Quantifiers
    cecp: CecpPoint


@dataclass(frozen=True)
class CecpTrajectory:
    """Ordered window results for one series, with the configuration echoed."""

    name: str
    config: OrdinalConfig
    spec: WindowSpec
    results: tuple[WindowResult, ...]

    def __len__(self) -> int:
        return len(self.results)

    def __iter__(self) -> Iterator[WindowResult]:
        return iter(self.results)

    def entropies(self) -> np.ndarray:
        return np.array([r.quantifiers.h for r in self.results])

    def complexities(self) -> np.ndarray:
        return np.array([r.quantifiers.c for r in self.results])


@dataclass(frozen=True)
class DriftReport:
    """Per-window efficiency flags and trailing entropy trends.

    flags[k] marks window k+1 as below the entropy threshold. trends[k]
    is the least-squares slope of H over the trailing ``trend_span``
    windows ending at window k+1, or None for the first span-1 windows.
    """

    h_threshold: float
    trend_span: int
    flags: tuple[bool, ...]
    trends: tuple[float | None, ...]


def min_window_length(config: OrdinalConfig) -> int:
    """Smallest window honoring pattern-count adequacy for a configuration.

    Requires (D-1)*delay + 5*D! observations, i.e. enough for each of
    the D! patterns to be seen about five times.
    """
    return (config.dimension - 1) * config.delay + PATTERNS_PER_SYMBOL * config.n_patterns


def validate_window_spec(spec: WindowSpec, config: OrdinalConfig) -> None:
    minimum = min_window_length(config)
    if spec.length < minimum:
        raise ConfigurationError(
            f"window length {spec.length} violates W >= (D-1)*delay + 5*D! "
            f"({spec.length} < {minimum}) for dimension {config.dimension}, "
            f"delay {config.delay}"
        )


def window_count(n_obs: int, spec: WindowSpec) -> int:
    """Number of full windows: floor((T - W) / step) + 1."""
    if n_obs < spec.length:
        raise InsufficientDataError(
            f"series has {n_obs} observations but a window needs {spec.length}"
        )
    return (n_obs - spec.length) // spec.step + 1


def window_bounds(n_obs: int, spec: WindowSpec) -> list[tuple[int, int]]:
    """Half-open observation index ranges of every window, in order."""
    return [
        (k * spec.step, k * spec.step + spec.length)
        for k in range(window_count(n_obs, spec))
    ]


def sliding_windows(series: TimeSeries, spec: WindowSpec) -> list[np.ndarray]:
    """Value segments of every window (views into the series)."""
    return [series.values[start:stop] for start, stop in window_bounds(len(series), spec)]


def analyze(
    series: TimeSeries,
    config: OrdinalConfig = OrdinalConfig(),
    spec: WindowSpec = WindowSpec(),
) -> CecpTrajectory:
    """Quantify every window of a series into a trajectory.

    Windows are independent, so the trajectory equals the concatenation
    of analyzing each window on its own.
    """
    validate_window_spec(spec, config)
    results = []
    for k, (start, stop) in enumerate(window_bounds(len(series), spec), start=1):
        distribution = pattern_distribution(series.values[start:stop], config)
        q = quantifiers_of(distribution)
        results.append(
            WindowResult(
                index=k,
                start_date=series.dates[start],
                end_date=series.dates[stop - 1],
                quantifiers=q,
                cecp=CecpPoint(h=q.h, c=q.c),
            )
        )
    return CecpTrajectory(
        name=series.name, config=config, spec=spec, results=tuple(results)
    )


def drift_report(
    trajectory: CecpTrajectory,
    h_threshold: float = 0.8,
    trend_span: int = 10,
) -> DriftReport:
    """Flag low-entropy windows and measure the trailing entropy trend."""
    if len(trajectory) == 0:
        raise ValueError("cannot build a drift report from an empty trajectory")
    if not 0.0 < h_threshold < 1.0:
        raise ConfigurationError(
            f"h_threshold must lie strictly between 0 and 1, got {h_threshold}"
        )
    if not 2 <= trend_span <= len(trajectory):
        raise ConfigurationError(
            f"trend_span must lie in [2, {len(trajectory)}] for this trajectory, "
            f"got {trend_span}"
        )

    entropies = trajectory.entropies()
    flags = tuple(bool(h < h_threshold) for h in entropies)
    steps = np.arange(trend_span)
    trends: list[float | None] = []
    for k in range(len(entropies)):
        if k + 1 < trend_span:
            trends.append(None)
        else:
            segment = entropies[k + 1 - trend_span : k + 1]
            slope = np.polyfit(steps, segment, 1)[0]
            trends.append(float(slope))
    return DriftReport(
        h_threshold=h_threshold,
        trend_span=trend_span,
        flags=flags,
        trends=tuple(trends),
    )
