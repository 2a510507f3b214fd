"""Synthetic series generators and surrogates.

These serve as ground truth for the quantifier pipeline: white noise
and random walks should sit near the efficiency corner, the chaotic
logistic map carries structure (and forbidden patterns), and the
stale-quote generator emulates administered, infrequently updated
quotes whose flat quantized runs drive permutation entropy down. The
stale-quote model is an analogy for that reporting mechanism, not a
claim about any institution's behavior.

All generators are pure functions of (spec, seed), built on numpy's
seeded PCG64 generator so values reproduce across platforms. Spliced
segments draw from child streams spawned from the parent seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date, timedelta

import numpy as np

from .errors import ConfigurationError
from .ingest import TimeSeries

EPOCH = date(2000, 1, 3)  # a Monday; synthetic dates are business days from here

KIND_WHITE_NOISE = "white-noise"
KIND_RANDOM_WALK = "gaussian-random-walk"
KIND_AR1 = "ar1"
KIND_LOGISTIC = "logistic-map"
KIND_STALE_QUOTE = "stale-quote"
KIND_SPLICE = "splice"
KINDS = (
    KIND_WHITE_NOISE,
    KIND_RANDOM_WALK,
    KIND_AR1,
    KIND_LOGISTIC,
    KIND_STALE_QUOTE,
    KIND_SPLICE,
)

CHAOTIC_R_MIN = 3.57  # onset of chaos for the logistic map


@dataclass(frozen=True)
class GeneratorSpec:
    """Recipe for one synthetic series.

    kind selects the generator; length and seed apply to all kinds.
    phi is the ar1 coefficient, r and x0 parametrize the logistic map
    (x0=None draws the start point from the seed), hold_prob/tick_size
    shape the stale-quote mechanism, and segments lists child specs for
    a splice (whose length is the sum of its segments).
    """

    kind: str
    length: int | None = None
    seed: int = 0
    phi: float = 0.8
    r: float = 4.0
    x0: float | None = None
    hold_prob: float = 0.9
    tick_size: float = 0.01
    segments: tuple["GeneratorSpec", ...] | None = None
    name: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ConfigurationError(f"unknown generator kind {self.kind!r}")
        if self.kind == KIND_SPLICE:
            if not self.segments:
                raise ConfigurationError("splice needs at least one segment")
            for segment in self.segments:
                if segment.kind == KIND_SPLICE:
                    raise ConfigurationError("splice segments cannot be splices")
            return
        if self.segments:
            raise ConfigurationError(f"{self.kind} does not take segments")
        if self.length is None or self.length < 1:
            raise ConfigurationError(
                f"length must be >= 1, got {self.length}"
            )
        if self.kind == KIND_AR1 and not abs(self.phi) < 1:
            raise ConfigurationError(f"ar1 needs |phi| < 1, got {self.phi}")
        if self.kind == KIND_LOGISTIC:
            if not CHAOTIC_R_MIN < self.r <= 4.0:
                raise ConfigurationError(
                    f"logistic map needs {CHAOTIC_R_MIN} < r <= 4 for the "
                    f"chaotic regime, got {self.r}"
                )
            if self.x0 is not None and not 0.0 < self.x0 < 1.0:
                raise ConfigurationError(
                    f"logistic x0 must lie in (0, 1), got {self.x0}"
                )
        if self.kind == KIND_STALE_QUOTE:
            if not 0.0 <= self.hold_prob < 1.0:
                raise ConfigurationError(
                    f"hold_prob must lie in [0, 1), got {self.hold_prob}"
                )
            if not self.tick_size > 0:
                raise ConfigurationError(
                    f"tick_size must be > 0, got {self.tick_size}"
                )

    @property
    def total_length(self) -> int:
        if self.kind == KIND_SPLICE:
            return sum(segment.total_length for segment in self.segments)
        return int(self.length)


def generate(spec: GeneratorSpec) -> TimeSeries:
    """Materialize a spec as a series on consecutive business days."""
    values = _values(spec)
    return TimeSeries(
        name=spec.name or spec.kind,
        dates=business_days(values.size),
        values=values,
    )


def shuffle_surrogate(series: TimeSeries, seed: int = 0) -> TimeSeries:
    """Uniformly random reordering of the values, same timestamps.

    Destroys temporal structure while preserving the value multiset;
    the standard control for ordinal-structure claims.
    """
    if len(series) < 2:
        raise ValueError("surrogates need a series of length >= 2")
    rng = np.random.default_rng(seed)
    return TimeSeries(
        name=f"{series.name}-surrogate",
        dates=series.dates,
        values=series.values[rng.permutation(len(series))],
    )


def business_days(count: int, start: date = EPOCH) -> tuple[date, ...]:
    """``count`` consecutive Monday-to-Friday dates from ``start``."""
    days = []
    current = start
    while len(days) < count:
        if current.weekday() < 5:
            days.append(current)
        current += timedelta(days=1)
    return tuple(days)


def _values(spec: GeneratorSpec) -> np.ndarray:
    if spec.kind == KIND_SPLICE:
        streams = np.random.SeedSequence(spec.seed).spawn(len(spec.segments))
        parts = [
            _values_with_rng(segment, np.random.default_rng(stream))
            for segment, stream in zip(spec.segments, streams)
        ]
        return np.concatenate(parts)
    return _values_with_rng(spec, np.random.default_rng(spec.seed))


def _values_with_rng(spec: GeneratorSpec, rng: np.random.Generator) -> np.ndarray:
    n = int(spec.length)
    if spec.kind == KIND_WHITE_NOISE:
        return rng.random(n)
    if spec.kind == KIND_RANDOM_WALK:
        return np.cumsum(rng.standard_normal(n))
    if spec.kind == KIND_AR1:
        noise = rng.standard_normal(n)
        values = np.empty(n)
        values[0] = noise[0]
        for t in range(1, n):
            values[t] = spec.phi * values[t - 1] + noise[t]
        return values
    if spec.kind == KIND_LOGISTIC:
        x = spec.x0 if spec.x0 is not None else rng.uniform(0.05, 0.95)
        values = np.empty(n)
        values[0] = x
        for t in range(1, n):
            x = spec.r * x * (1.0 - x)
            values[t] = x
        return values
    if spec.kind == KIND_STALE_QUOTE:
        walk = np.cumsum(rng.standard_normal(n))
        quantized = np.round(walk / spec.tick_size) * spec.tick_size
        updated = rng.random(n) >= spec.hold_prob
        updated[0] = True  # nothing to hold on the first step
        last_update = np.maximum.accumulate(np.where(updated, np.arange(n), 0))
        return quantized[last_update]
    raise ConfigurationError(f"unknown generator kind {spec.kind!r}")


def splice(segments: tuple[GeneratorSpec, ...] | list, seed: int = 0, name: str | None = None) -> GeneratorSpec:
    """Convenience constructor for a splice spec."""
    return GeneratorSpec(
        kind=KIND_SPLICE, seed=seed, segments=tuple(segments), name=name
    )
