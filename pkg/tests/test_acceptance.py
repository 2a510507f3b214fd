"""Acceptance suite.

Each test implements one acceptance criterion at its stated tolerance
and runtime budget, printing one PASS line when it holds (run with -v
and -s to see them). Costly synthetic point sets are computed once and
shared across criteria through a module-level cache.
"""

from __future__ import annotations

import math
from time import perf_counter

import numpy as np
import pytest

from permplane import (
    GeneratorSpec,
    OrdinalConfig,
    WindowSpec,
    analyze,
    cecp_bounds,
    cecp_point,
    drift_report,
    generate,
    jensen_shannon,
    normalized_entropy,
    pattern_distribution,
    quantifiers_of,
    shannon_entropy,
    shuffle_surrogate,
    splice,
    statistical_complexity,
    window_count,
    within_bounds,
)
from permplane.cli import main as cli_main
from oracles import brute_force_pattern_counts, enumerate_window_starts, is_contiguous

CONFIG = OrdinalConfig(dimension=4, delay=1)
SPEC = WindowSpec(length=500, step=30)

_cache: dict = {}


def _report(number: int, name: str, started: float, budget: float) -> None:
    elapsed = perf_counter() - started
    assert elapsed < budget, f"criterion {number} overran its {budget}s budget: {elapsed:.1f}s"
    print(f"criterion {number:2d} ({name}): PASS [{elapsed:.2f}s]", flush=True)


def noise_trajectories():
    if "noise" not in _cache:
        _cache["noise"] = [
            analyze(
                generate(GeneratorSpec(kind="white-noise", length=3996, seed=seed)),
                CONFIG,
                SPEC,
            )
            for seed in range(20)
        ]
    return _cache["noise"]


def splice_trajectory():
    if "splice" not in _cache:
        series = generate(
            splice(
                [
                    GeneratorSpec(kind="white-noise", length=1200),
                    GeneratorSpec(kind="stale-quote", length=1600, hold_prob=0.93),
                    GeneratorSpec(kind="white-noise", length=1196),
                ],
                seed=0,
                name="spliced",
            )
        )
        _cache["splice"] = analyze(series, CONFIG, SPEC)
    return _cache["splice"]


def logistic_points():
    """(C_original, C_surrogate, forbidden, cecp points) per seed."""
    if "logistic" not in _cache:
        rows = []
        points = []
        for seed in range(20):
            series = generate(GeneratorSpec(kind="logistic-map", length=2000, seed=seed))
            original = pattern_distribution(series.values, CONFIG)
            surrogate = pattern_distribution(
                shuffle_surrogate(series, seed=seed + 1000).values, CONFIG
            )
            q_orig = quantifiers_of(original)
            q_surr = quantifiers_of(surrogate)
            rows.append(
                (q_orig.c, q_surr.c, int((original.counts == 0).sum()))
            )
            points.extend([(q_orig.h, q_orig.c), (q_surr.h, q_surr.c)])
        _cache["logistic"] = (rows, points)
    return _cache["logistic"]


def test_c01_analytic_entropy_suite():
    started = perf_counter()
    uniform = np.full(24, 1.0 / 24.0)
    delta = np.zeros(24)
    delta[0] = 1.0

    assert shannon_entropy(uniform) == pytest.approx(math.log(24), abs=1e-12)
    assert normalized_entropy(uniform) == 1.0
    assert shannon_entropy(delta) == 0.0
    assert statistical_complexity(delta) == 0.0
    assert statistical_complexity(uniform) == 0.0
    point = cecp_point(uniform)
    assert (point.h, point.c) == (1.0, 0.0)
    _report(1, "analytic entropy suite", started, budget=1.0)


def test_c02_ordinal_oracle_equivalence():
    started = perf_counter()
    rng = np.random.default_rng(2024)
    checked = 0
    for dimension in (2, 3, 4):
        config = OrdinalConfig(dimension=dimension)
        for trial in range(334):
            length = int(rng.integers(dimension, 31))
            values = rng.random(length)
            if trial % 3 == 0:
                values = np.round(values, 1)  # quantized, exercises tie runs
            counts = pattern_distribution(values, config).counts.tolist()
            assert counts == brute_force_pattern_counts(values.tolist(), dimension)
            checked += 1
    assert checked >= 1000
    _report(2, "ordinal oracle equivalence", started, budget=10.0)


def test_c03_ordinal_invariance_under_monotone_maps():
    started = perf_counter()
    rng = np.random.default_rng(3)
    config = OrdinalConfig(dimension=4)
    for _ in range(100):
        values = rng.random(int(rng.integers(60, 200)))
        base = quantifiers_of(pattern_distribution(values, config))
        for mapped in (np.exp(values), 3.0 * values + 1.0):
            other = quantifiers_of(pattern_distribution(mapped, config))
            assert other.h == base.h
            assert other.c == base.c
    _report(3, "ordinal invariance", started, budget=5.0)


def test_c04_jensen_shannon_properties():
    started = perf_counter()
    ln2 = math.log(2)
    for m in (2, 6, 24):
        rng = np.random.default_rng(40 + m)
        for _ in range(1000):
            p = rng.dirichlet(np.ones(m))
            q = rng.dirichlet(np.ones(m))
            j = jensen_shannon(p, q)
            assert j == jensen_shannon(q, p)
            assert -1e-12 <= j <= ln2 + 1e-12
            assert jensen_shannon(p, p) == 0.0
    _report(4, "Jensen-Shannon properties", started, budget=5.0)


def test_c05_white_noise_efficiency_band():
    started = perf_counter()
    for trajectory in noise_trajectories():
        assert len(trajectory) == 117
        assert trajectory.entropies().min() >= 0.97
        assert trajectory.complexities().max() <= 0.05
    _report(5, "white-noise band", started, budget=30.0)


def test_c06_manipulation_analogue_dip():
    started = perf_counter()
    trajectory = splice_trajectory()
    entropies = trajectory.entropies()

    lowest = int(np.argmin(entropies))
    lowest_start = lowest * SPEC.step
    assert entropies[lowest] <= 0.6
    assert 1200 <= lowest_start and lowest_start + SPEC.length <= 2800
    assert entropies[-5:].min() >= 0.9

    report = drift_report(trajectory, h_threshold=0.8, trend_span=10)
    flagged = [i for i, flag in enumerate(report.flags) if flag]
    assert flagged and is_contiguous(flagged)
    assert lowest in flagged
    _report(6, "manipulation-analogue dip", started, budget=30.0)


def test_c07_surrogate_complexity_ordering():
    started = perf_counter()
    rows, _ = logistic_points()
    wins = sum(1 for c_orig, c_surr, _ in rows if c_orig > c_surr)
    assert wins >= 19
    assert all(forbidden >= 1 for _, _, forbidden in rows)
    _report(7, "surrogate complexity ordering", started, budget=10.0)


def test_c08_window_arithmetic_property():
    started = perf_counter()
    rng = np.random.default_rng(8)
    for _ in range(1000):
        window = int(rng.integers(2, 400))
        n_obs = window + int(rng.integers(0, 3000))
        step = int(rng.integers(1, 120))
        spec = WindowSpec(length=window, step=step)
        assert window_count(n_obs, spec) == len(
            enumerate_window_starts(n_obs, window, step)
        )

    # Regression note: the start-anchored rule gives 117 windows for the
    # canonical (T=3996, W=500, step=30) settings; a tail-inclusive
    # convention would give 118. This library pins 117.
    assert window_count(3996, WindowSpec(length=500, step=30)) == 117
    assert math.ceil((3996 - 500) / 30) + 1 == 118
    _report(8, "window arithmetic", started, budget=5.0)


def test_c09_cli_reproducibility(tmp_path):
    started = perf_counter()
    assert cli_main(["synth", "--kind", "gaussian-random-walk", "--length", "3996",
                     "--seed", "11", "--name", "walk",
                     "--out-dir", str(tmp_path)]) == 0
    input_path = tmp_path / "walk.csv"
    out1, out2 = tmp_path / "r1", tmp_path / "r2"
    for out in (out1, out2):
        assert cli_main(["analyze", "--input", str(input_path),
                         "--out-dir", str(out)]) == 0
    for name in ("trajectory.csv", "cecp_points.csv", "entropy_evolution.csv"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()
    _report(9, "CLI reproducibility", started, budget=10.0)


def test_c10_bounds_containment():
    started = perf_counter()
    hs, cs = [], []
    for trajectory in noise_trajectories():
        hs.extend(trajectory.entropies())
        cs.extend(trajectory.complexities())
    hs.extend(splice_trajectory().entropies())
    cs.extend(splice_trajectory().complexities())
    _, points = logistic_points()
    for h, c in points:
        hs.append(h)
        cs.append(c)

    lower, upper = cecp_bounds(24, resolution=32768)
    inside = within_bounds(np.array(hs), np.array(cs), lower, upper, tol=1e-9)
    assert bool(np.all(inside)), f"{int((~inside).sum())} of {len(hs)} points escaped"
    _report(10, "bounds containment", started, budget=10.0)
