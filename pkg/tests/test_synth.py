from __future__ import annotations

import numpy as np
import pytest

from permplane import (
    ConfigurationError,
    GeneratorSpec,
    OrdinalConfig,
    business_days,
    generate,
    pattern_distribution,
    quantifiers_of,
    shuffle_surrogate,
    splice,
)
from permplane.synth import EPOCH


class TestGenerate:
    def test_white_noise_is_deterministic_per_seed(self):
        spec = GeneratorSpec(kind="white-noise", length=5, seed=77)
        first = generate(spec)
        second = generate(spec)
        assert first == second
        assert (0 <= first.values).all() and (first.values < 1).all()

    def test_different_seeds_differ(self):
        a = generate(GeneratorSpec(kind="white-noise", length=50, seed=1))
        b = generate(GeneratorSpec(kind="white-noise", length=50, seed=2))
        assert not np.array_equal(a.values, b.values)

    def test_logistic_iterates_from_pinned_start(self):
        series = generate(GeneratorSpec(kind="logistic-map", length=4, seed=0, x0=0.2))
        assert series.values == pytest.approx(
            [0.2, 0.64, 0.9216, 0.28901376], rel=1e-12
        )

    def test_logistic_start_drawn_from_seed_stays_in_unit_interval(self):
        series = generate(GeneratorSpec(kind="logistic-map", length=1000, seed=4))
        assert (series.values >= 0).all() and (series.values <= 1).all()

    def test_random_walk_is_cumulative_sum(self):
        series = generate(GeneratorSpec(kind="gaussian-random-walk", length=100, seed=9))
        steps = np.diff(series.values)
        rng = np.random.default_rng(9)
        assert series.values == pytest.approx(np.cumsum(rng.standard_normal(100)))
        assert steps.std() == pytest.approx(1.0, abs=0.3)

    def test_random_walk_sign_balance(self):
        series = generate(GeneratorSpec(kind="gaussian-random-walk", length=10000, seed=2))
        positive = (np.diff(series.values) > 0).mean()
        assert 0.47 <= positive <= 0.53

    def test_ar1_tracks_recurrence(self):
        spec = GeneratorSpec(kind="ar1", length=50, seed=3, phi=0.5)
        series = generate(spec)
        rng = np.random.default_rng(3)
        noise = rng.standard_normal(50)
        x = noise[0]
        for t in range(1, 50):
            x = 0.5 * x + noise[t]
            assert series.values[t] == pytest.approx(x, rel=1e-12)

    def test_stale_quote_zero_diff_fraction(self):
        spec = GeneratorSpec(kind="stale-quote", length=10000, seed=5, hold_prob=0.9)
        series = generate(spec)
        frac = float((np.diff(series.values) == 0).mean())
        assert frac == pytest.approx(0.9, abs=0.03)

    def test_stale_quote_values_are_quantized(self):
        spec = GeneratorSpec(kind="stale-quote", length=500, seed=6, tick_size=0.25)
        series = generate(spec)
        assert np.allclose(np.round(series.values / 0.25) * 0.25, series.values)

    def test_splice_concatenates_segment_lengths(self):
        spec = splice(
            [
                GeneratorSpec(kind="white-noise", length=1500),
                GeneratorSpec(kind="stale-quote", length=1000, hold_prob=0.93),
                GeneratorSpec(kind="white-noise", length=1496),
            ],
            seed=8,
        )
        series = generate(spec)
        assert len(series) == 3996
        assert spec.total_length == 3996

    def test_splice_is_deterministic(self):
        spec = splice([GeneratorSpec(kind="white-noise", length=10)], seed=8)
        assert generate(spec) == generate(spec)

    def test_synthetic_dates_are_business_days(self):
        series = generate(GeneratorSpec(kind="white-noise", length=30, seed=0))
        assert series.dates[0] == EPOCH
        assert all(day.weekday() < 5 for day in series.dates)
        assert all(a < b for a, b in zip(series.dates, series.dates[1:]))


class TestSpecValidation:
    def test_unknown_kind(self):
        with pytest.raises(ConfigurationError):
            GeneratorSpec(kind="pink-noise", length=10)

    def test_length_required(self):
        with pytest.raises(ConfigurationError):
            GeneratorSpec(kind="white-noise")
        with pytest.raises(ConfigurationError):
            GeneratorSpec(kind="white-noise", length=0)

    def test_ar1_coefficient_bounded(self):
        with pytest.raises(ConfigurationError):
            GeneratorSpec(kind="ar1", length=10, phi=1.0)

    def test_logistic_parameter_must_be_chaotic(self):
        with pytest.raises(ConfigurationError):
            GeneratorSpec(kind="logistic-map", length=10, r=3.2)
        with pytest.raises(ConfigurationError):
            GeneratorSpec(kind="logistic-map", length=10, r=4.2)
        with pytest.raises(ConfigurationError):
            GeneratorSpec(kind="logistic-map", length=10, x0=1.5)

    def test_stale_quote_parameters(self):
        with pytest.raises(ConfigurationError):
            GeneratorSpec(kind="stale-quote", length=10, hold_prob=1.0)
        with pytest.raises(ConfigurationError):
            GeneratorSpec(kind="stale-quote", length=10, tick_size=0.0)

    def test_splice_needs_segments(self):
        with pytest.raises(ConfigurationError):
            GeneratorSpec(kind="splice")

    def test_splice_segments_cannot_nest(self):
        inner = splice([GeneratorSpec(kind="white-noise", length=5)])
        with pytest.raises(ConfigurationError):
            splice([inner])

    def test_plain_kinds_reject_segments(self):
        with pytest.raises(ConfigurationError):
            GeneratorSpec(
                kind="white-noise",
                length=5,
                segments=(GeneratorSpec(kind="white-noise", length=5),),
            )


class TestShuffleSurrogate:
    def test_rejects_single_observation(self):
        series = generate(GeneratorSpec(kind="white-noise", length=1, seed=0))
        with pytest.raises(ValueError):
            shuffle_surrogate(series)

    def test_length_two_yields_one_of_its_orderings(self):
        series = generate(GeneratorSpec(kind="white-noise", length=2, seed=0))
        surrogate = shuffle_surrogate(series, seed=1)
        assert sorted(surrogate.values.tolist()) == sorted(series.values.tolist())

    def test_value_multiset_and_dates_preserved(self):
        series = generate(GeneratorSpec(kind="gaussian-random-walk", length=200, seed=1))
        surrogate = shuffle_surrogate(series, seed=2)
        assert surrogate.dates == series.dates
        assert sorted(surrogate.values.tolist()) == sorted(series.values.tolist())
        assert not np.array_equal(surrogate.values, series.values)

    def test_deterministic_under_seed(self):
        series = generate(GeneratorSpec(kind="white-noise", length=50, seed=3))
        assert shuffle_surrogate(series, seed=9) == shuffle_surrogate(series, seed=9)


class TestDynamicsSignatures:
    def test_logistic_map_has_forbidden_patterns(self):
        config = OrdinalConfig(dimension=4)
        for seed in (0, 1, 2):
            series = generate(GeneratorSpec(kind="logistic-map", length=2000, seed=seed))
            counts = pattern_distribution(series.values, config).counts
            assert (counts == 0).sum() >= 1

    def test_logistic_complexity_exceeds_surrogate(self):
        config = OrdinalConfig(dimension=4)
        wins = 0
        for seed in range(5):
            series = generate(GeneratorSpec(kind="logistic-map", length=2000, seed=seed))
            surrogate = shuffle_surrogate(series, seed=seed + 1000)
            c = quantifiers_of(pattern_distribution(series.values, config)).c
            c_surrogate = quantifiers_of(
                pattern_distribution(surrogate.values, config)
            ).c
            wins += c > c_surrogate
        assert wins == 5


class TestBusinessDays:
    def test_skips_weekends(self):
        days = business_days(10)
        assert len(days) == 10
        assert all(day.weekday() < 5 for day in days)
        # EPOCH is a Monday; the first week runs Mon-Fri then skips to Monday
        assert (days[5] - days[4]).days == 3
