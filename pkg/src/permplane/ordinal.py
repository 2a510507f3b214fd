"""Ordinal symbolization of numeric segments (Bandt-Pompe method).

Each length-D embedding window of a series is mapped to the permutation
that sorts its values ascending; counting those permutations over all
windows yields an empirical distribution over the D! possible ordinal
patterns. Patterns are stored as Lehmer ranks, i.e. the index of the
permutation in lexicographic order, which gives dense array indexing
for the counts.

Ties matter for quantized data such as rate quotes: under the default
``index-order`` policy equal values keep their order of appearance, so
a constant run collapses onto the ascending pattern. The alternative
``jitter`` policy breaks ties with a tiny seeded perturbation instead.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ConfigurationError, InsufficientDataError

MIN_DIMENSION = 2
MAX_DIMENSION = 7  # D! <= 5040 keeps pattern counts workable at desk scale

TIE_INDEX_ORDER = "index-order"
TIE_JITTER = "jitter"
TIE_POLICIES = (TIE_INDEX_ORDER, TIE_JITTER)

DEFAULT_JITTER_AMPLITUDE = 1e-9


@dataclass(frozen=True)
class OrdinalConfig:
    """Parameters of the ordinal symbolization.

    dimension: pattern length D, between 2 and 7.
    delay: embedding delay in observation steps, >= 1.
    tie_policy: "index-order" (equal values keep input order) or
        "jitter" (seeded perturbation of amplitude ``jitter_amplitude``
        breaks ties before ranking).
    """

    dimension: int = 4
    delay: int = 1
    tie_policy: str = TIE_INDEX_ORDER
    jitter_seed: int = 0
    jitter_amplitude: float = DEFAULT_JITTER_AMPLITUDE

    def __post_init__(self) -> None:
        if not MIN_DIMENSION <= self.dimension <= MAX_DIMENSION:
            raise ConfigurationError(
                f"dimension must satisfy {MIN_DIMENSION} <= D <= {MAX_DIMENSION}, "
                f"got {self.dimension}"
            )
        if self.delay < 1:
            raise ConfigurationError(f"delay must be >= 1, got {self.delay}")
        if self.tie_policy not in TIE_POLICIES:
            raise ConfigurationError(
                f"tie_policy must be one of {TIE_POLICIES}, got {self.tie_policy!r}"
            )
        if self.tie_policy == TIE_JITTER and not self.jitter_amplitude > 0:
            raise ConfigurationError(
                f"jitter amplitude must be > 0, got {self.jitter_amplitude}"
            )

    @property
    def n_patterns(self) -> int:
        """Alphabet size M = D!."""
        return math.factorial(self.dimension)

    @property
    def min_series_length(self) -> int:
        """Shortest series that yields at least one pattern: (D-1)*delay + 1."""
        return (self.dimension - 1) * self.delay + 1


@dataclass(frozen=True)
class PatternDistribution:
    """Counts over the D! ordinal patterns of one data segment."""

    dimension: int
    counts: np.ndarray = field(repr=False)
    total: int

    def __post_init__(self) -> None:
        counts = np.asarray(self.counts, dtype=np.int64)
        object.__setattr__(self, "counts", counts)
        m = math.factorial(self.dimension)
        if counts.shape != (m,):
            raise ValueError(
                f"counts must have length D! = {m}, got shape {counts.shape}"
            )
        if (counts < 0).any():
            raise ValueError("counts must be nonnegative")
        if int(counts.sum()) != self.total:
            raise ValueError(
                f"total {self.total} does not match sum of counts {int(counts.sum())}"
            )
        if self.total < 1:
            raise ValueError("distribution must contain at least one pattern")

    @property
    def n_patterns(self) -> int:
        return self.counts.shape[0]

    def probabilities(self) -> np.ndarray:
        return self.counts / self.total

    def to_json(self) -> str:
        """Serialize as {"dimension": D, "counts": [...]} for debug output."""
        return json.dumps(
            {"dimension": self.dimension, "counts": self.counts.tolist()}
        )


def ordinal_pattern(
    window: Sequence[float] | np.ndarray,
    tie_policy: str = TIE_INDEX_ORDER,
    jitter_seed: int = 0,
    jitter_amplitude: float = DEFAULT_JITTER_AMPLITUDE,
) -> tuple[int, ...]:
    """Permutation that sorts ``window`` ascending.

    Returns indices into the window ordered by value, e.g. (9, 10, 6)
    gives (2, 0, 1). Under "index-order" equal values keep the earlier
    index first; under "jitter" a seeded perturbation breaks ties.
    """
    values = np.asarray(window, dtype=float)
    if values.ndim != 1 or values.size < 2:
        raise ValueError(
            f"window must be a 1-d sequence of at least 2 values, got shape {values.shape}"
        )
    if tie_policy not in TIE_POLICIES:
        raise ConfigurationError(
            f"tie_policy must be one of {TIE_POLICIES}, got {tie_policy!r}"
        )
    if tie_policy == TIE_JITTER:
        values = _jittered(values, jitter_seed, jitter_amplitude)
    return tuple(int(i) for i in np.argsort(values, kind="stable"))


def permutation_to_rank(permutation: Sequence[int]) -> int:
    """Lehmer rank of a permutation of {0..D-1} (lexicographic index)."""
    perm = tuple(permutation)
    d = len(perm)
    if sorted(perm) != list(range(d)):
        raise ValueError(f"not a permutation of 0..{d - 1}: {perm}")
    rank = 0
    for i in range(d - 1):
        smaller_later = sum(1 for j in range(i + 1, d) if perm[j] < perm[i])
        rank += smaller_later * math.factorial(d - 1 - i)
    return rank


def rank_to_permutation(rank: int, dimension: int) -> tuple[int, ...]:
    """Inverse of :func:`permutation_to_rank`."""
    m = math.factorial(dimension)
    if not 0 <= rank < m:
        raise ValueError(f"rank must lie in [0, {m - 1}], got {rank}")
    remaining = list(range(dimension))
    perm = []
    for i in range(dimension):
        f = math.factorial(dimension - 1 - i)
        idx, rank = divmod(rank, f)
        perm.append(remaining.pop(idx))
    return tuple(perm)


def extract_patterns(values: Sequence[float] | np.ndarray, config: OrdinalConfig) -> np.ndarray:
    """Lehmer ranks of all embedding windows of ``values``, in order.

    Window t spans indices (t, t+delay, ..., t+(D-1)*delay); the result
    has length L - (D-1)*delay. Under the jitter policy the whole
    segment is perturbed once, so overlapping windows see a consistent
    tie resolution.
    """
    x = np.asarray(values, dtype=float)
    if x.ndim != 1:
        raise ValueError(f"values must be 1-d, got shape {x.shape}")
    if x.size < config.min_series_length:
        raise InsufficientDataError(
            f"series of length {x.size} is too short for dimension "
            f"{config.dimension} and delay {config.delay}: need at least "
            f"{config.min_series_length} observations"
        )
    if config.tie_policy == TIE_JITTER:
        x = _jittered(x, config.jitter_seed, config.jitter_amplitude)

    d, tau = config.dimension, config.delay
    n = x.size - (d - 1) * tau
    embedding = x[np.arange(n)[:, None] + np.arange(d)[None, :] * tau]
    perms = np.argsort(embedding, axis=1, kind="stable")

    ranks = np.zeros(n, dtype=np.int64)
    for i in range(d - 1):
        smaller_later = np.zeros(n, dtype=np.int64)
        for j in range(i + 1, d):
            smaller_later += perms[:, j] < perms[:, i]
        ranks += smaller_later * math.factorial(d - 1 - i)
    return ranks


def pattern_distribution(
    values: Sequence[float] | np.ndarray, config: OrdinalConfig
) -> PatternDistribution:
    """Count the ordinal patterns of ``values`` into a distribution."""
    ranks = extract_patterns(values, config)
    counts = np.bincount(ranks, minlength=config.n_patterns)
    return PatternDistribution(
        dimension=config.dimension, counts=counts, total=int(ranks.size)
    )


def _jittered(values: np.ndarray, seed: int, amplitude: float) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return values + rng.random(values.size) * amplitude
