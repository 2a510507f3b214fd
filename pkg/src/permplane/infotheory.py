"""Entropy, disequilibrium and complexity over discrete distributions.

All entropies use natural logarithms. The normalization constants are
computed operationally rather than from closed forms: S_max is the
entropy of the float uniform vector and Q0 is the Jensen-Shannon
divergence between a delta and the uniform, both produced by the same
routines they normalize. That makes the normalizers self-verifying and
maps the uniform distribution to the efficiency corner (1, 0) exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import ConfigurationError, InvalidDistributionError
from .ordinal import PatternDistribution

NORMALIZATION_TOL = 1e-9


@dataclass(frozen=True)
class Quantifiers:
    """Window-level quantifiers: h in [0,1], c >= 0, s in nats."""

    h: float
    c: float
    s: float


@dataclass(frozen=True)
class CecpPoint:
    """One point of the complexity-entropy causality plane."""

    h: float
    c: float


def shannon_entropy(p: Sequence[float] | np.ndarray) -> float:
    """-sum(p_i ln p_i) in nats, with 0 ln 0 taken as 0."""
    return _entropy(_as_distribution(p))


def normalized_entropy(p: Sequence[float] | np.ndarray) -> float:
    """Shannon entropy divided by its maximum ln(M); lies in [0, 1]."""
    q = _as_distribution(p)
    if q.size < 2:
        raise InvalidDistributionError(
            f"normalized entropy needs an alphabet of M >= 2, got M={q.size}"
        )
    h = _entropy(q) / max_entropy(q.size)
    return min(max(h, 0.0), 1.0)


def jensen_shannon(
    p: Sequence[float] | np.ndarray, q: Sequence[float] | np.ndarray
) -> float:
    """Jensen-Shannon divergence between two distributions, in nats.

    Symmetric by construction and bounded by ln 2; zero iff p == q.
    """
    a = _as_distribution(p)
    b = _as_distribution(q)
    if a.size != b.size:
        raise InvalidDistributionError(
            f"alphabet size mismatch: {a.size} vs {b.size}"
        )
    return _entropy((a + b) / 2.0) - (_entropy(a) + _entropy(b)) / 2.0


def disequilibrium(p: Sequence[float] | np.ndarray) -> float:
    """Jensen-Shannon distance to the uniform, normalized to [0, 1].

    The normalizer is the divergence of a delta distribution from the
    uniform, so deltas map to 1 and the uniform maps to 0.
    """
    q = _as_distribution(p)
    return jensen_shannon(q, _uniform(q.size)) / _delta_uniform_divergence(q.size)


def statistical_complexity(p: Sequence[float] | np.ndarray) -> float:
    """Product of disequilibrium and normalized entropy.

    Zero for both the uniform (pure randomness) and any delta (pure
    determinism); positive for structured dynamics in between.
    """
    q = _as_distribution(p)
    return disequilibrium(q) * normalized_entropy(q)


def cecp_point(p: Sequence[float] | np.ndarray) -> CecpPoint:
    """(normalized entropy, statistical complexity) of a distribution."""
    q = _as_distribution(p)
    return CecpPoint(h=normalized_entropy(q), c=statistical_complexity(q))


def quantifiers_of(distribution: PatternDistribution) -> Quantifiers:
    """All three quantifiers of a pattern distribution at once."""
    p = distribution.probabilities()
    return Quantifiers(
        h=normalized_entropy(p),
        c=statistical_complexity(p),
        s=shannon_entropy(p),
    )


@lru_cache(maxsize=None)
def max_entropy(m: int) -> float:
    """Entropy of the uniform distribution over m bins (= ln m)."""
    if m < 2:
        raise InvalidDistributionError(f"alphabet size must be >= 2, got {m}")
    return _entropy(_uniform(m))


def cecp_bounds(m: int, resolution: int = 1024) -> tuple[np.ndarray, np.ndarray]:
    """Numeric lower and upper boundary curves of the causality plane.

    Both curves are returned as (resolution, 2) arrays of (H, C) pairs
    on a shared H grid over [0, 1]. The lower curve is the envelope of
    the one-parameter family with a single distinguished bin p and the
    remaining mass spread uniformly; the upper curve is the envelope of
    the same family with k bins forced to zero, k = 0..M-2. The curves
    are a numeric approximation of the attainable region's boundary,
    adequate for plotting and containment checks.
    """
    if m < 2:
        raise ConfigurationError(f"alphabet size must be >= 2, got {m}")
    if resolution < 16:
        raise ConfigurationError(
            f"bounds resolution must be >= 16, got {resolution}"
        )
    grid_h = np.linspace(0.0, 1.0, resolution)

    lower_c = np.full(resolution, np.inf)
    for branch_h, branch_c in _family_branches(m, n_zero=0, n_points=resolution):
        interp = np.interp(grid_h, branch_h, branch_c)
        interp[(grid_h < branch_h[0]) | (grid_h > branch_h[-1])] = np.inf
        lower_c = np.minimum(lower_c, interp)

    upper_c = np.full(resolution, -np.inf)
    for k in range(m - 1):
        for branch_h, branch_c in _family_branches(m, n_zero=k, n_points=resolution):
            interp = np.interp(grid_h, branch_h, branch_c)
            interp[(grid_h < branch_h[0]) | (grid_h > branch_h[-1])] = -np.inf
            upper_c = np.maximum(upper_c, interp)

    # Analytic endpoints: the delta sits at (0, 0), the uniform at (1, 0).
    lower_c[0] = upper_c[0] = 0.0
    lower_c[-1] = upper_c[-1] = 0.0

    lower = np.column_stack([grid_h, lower_c])
    upper = np.column_stack([grid_h, upper_c])
    return lower, upper


def within_bounds(
    h: float | np.ndarray,
    c: float | np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    tol: float = 1e-9,
) -> bool | np.ndarray:
    """Whether point(s) lie between two curves from :func:`cecp_bounds`."""
    h = np.asarray(h, dtype=float)
    c = np.asarray(c, dtype=float)
    c_low = np.interp(h, lower[:, 0], lower[:, 1])
    c_high = np.interp(h, upper[:, 0], upper[:, 1])
    ok = (c >= c_low - tol) & (c <= c_high + tol)
    return bool(ok) if ok.ndim == 0 else ok


def _as_distribution(p: Sequence[float] | np.ndarray) -> np.ndarray:
    q = np.asarray(p, dtype=float)
    if q.ndim != 1 or q.size == 0:
        raise InvalidDistributionError(
            f"distribution must be a nonempty 1-d vector, got shape {q.shape}"
        )
    if (q < 0).any():
        raise InvalidDistributionError(
            f"distribution has negative mass (min {q.min():.3g})"
        )
    total = float(q.sum())
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise InvalidDistributionError(
            f"distribution sums to {total!r}, more than {NORMALIZATION_TOL} away from 1"
        )
    return q


def _entropy(p: np.ndarray) -> float:
    nz = p[p > 0]
    return float(-(nz * np.log(nz)).sum()) + 0.0  # never emit -0.0


def _uniform(m: int) -> np.ndarray:
    return np.full(m, 1.0 / m)


@lru_cache(maxsize=None)
def _delta_uniform_divergence(m: int) -> float:
    """Normalizer Q0: divergence of a delta from the uniform over m bins."""
    delta = np.zeros(m)
    delta[0] = 1.0
    return jensen_shannon(delta, _uniform(m))


def _family_branches(m: int, n_zero: int, n_points: int):
    """(H, C) branches of the k-zeros one-distinguished-bin family.

    The family has ``n_zero`` empty bins, one bin carrying p and the
    remaining bins sharing 1-p equally. H is monotone in p on either
    side of the interior uniform point, so the sweep is split there and
    each branch is yielded sorted by increasing H.
    """
    n_live = m - n_zero
    rows = np.zeros((n_points, m))
    p_grid = np.linspace(0.0, 1.0, n_points)
    rows[:, 0] = p_grid
    if n_live > 1:
        rows[:, 1:n_live] = ((1.0 - p_grid) / (n_live - 1))[:, None]

    h_rows, c_rows = _quantifier_rows(rows, m)
    split = 1.0 / n_live
    for mask in (p_grid <= split, p_grid >= split):
        if mask.sum() < 2:
            continue
        h, c = h_rows[mask], c_rows[mask]
        order = np.argsort(h)
        yield h[order], c[order]


def _quantifier_rows(rows: np.ndarray, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized (H, C) over rows of distributions; mirrors the scalar path."""
    s_max = max_entropy(m)
    q0 = _delta_uniform_divergence(m)
    uniform = _uniform(m)

    s = _entropy_rows(rows)
    h = np.clip(s / s_max, 0.0, 1.0)
    js = _entropy_rows((rows + uniform) / 2.0) - (s + s_max) / 2.0
    c = (js / q0) * h
    return h, c


def _entropy_rows(rows: np.ndarray) -> np.ndarray:
    mask = rows > 0
    terms = np.where(mask, -rows * np.log(np.where(mask, rows, 1.0)), 0.0)
    return terms.sum(axis=1)
