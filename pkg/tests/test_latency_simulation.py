# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Tests for the seeded Monte Carlo engine and the coded-compute simulation."""

import numpy as np
import pytest
from pydantic import ValidationError

from coreason_flexcode.exceptions import LatencyParameterError
from coreason_flexcode.latency import (
    AccessProfile,
    DelayDistribution,
    DelayKind,
    LatencyModel,
    LatencyResult,
    MonteCarloEngine,
    completion_times,
    compute_table,
    latency_samples,
    monte_carlo,
    sample_delays,
    simulate_coded_compute,
)
from coreason_flexcode.layered import FlexProfile


@pytest.fixture(name="access")
def small_access() -> AccessProfile:
    return AccessProfile(recovery=(3, 2), rows=(1, 2))


class TestModels:
    """Tests for the latency models."""

    def test_access_from_profile(self) -> None:
        access = AccessProfile.from_profile(FlexProfile.from_pairs(6, [(4, 3), (3, 4), (2, 6)]))
        assert access.recovery == (4, 3, 2)
        assert access.rows == (3, 4, 6)
        assert access.depth == 3

    @pytest.mark.parametrize(
        "recovery, rows",
        [((3, 2), (1,)), ((2, 3), (1, 2)), ((3, 2), (2, 2)), ((3, 0), (1, 2))],
    )
    def test_access_validation(self, recovery: tuple[int, ...], rows: tuple[int, ...]) -> None:
        with pytest.raises(ValidationError):
            AccessProfile(recovery=recovery, rows=rows)

    def test_delay_bounds(self) -> None:
        with pytest.raises(ValidationError):
            DelayDistribution(kind=DelayKind.UNIFORM, low=2.0, high=1.0)

    def test_result_properties(self) -> None:
        result = LatencyResult(fixed=(2.0, 2.5), flexible=1.8, std_error=0.01)
        assert result.savings == pytest.approx((0.2, 0.7))
        assert result.best_fixed == 2.0
        assert result.savings_pct_vs_best_fixed == pytest.approx(10.0)
        assert result.ci_half_width == pytest.approx(0.0196)
        assert LatencyResult(fixed=(1.0,), flexible=1.0).ci_half_width is None


class TestCompletionTimes:
    """Tests for the order-statistic finish times."""

    def test_single_trial(self, access: AccessProfile) -> None:
        fixed, flexible = completion_times(np.array([[0.3, 0.1, 0.2]]), access, 0.05)
        assert fixed[0].tolist() == pytest.approx([0.35, 0.3])
        assert flexible.tolist() == pytest.approx([0.3])

    def test_too_few_workers(self, access: AccessProfile) -> None:
        with pytest.raises(LatencyParameterError):
            completion_times(np.zeros((4, 2)), access, 1.0)

    def test_latency_samples_are_bounded(self, access: AccessProfile) -> None:
        model = LatencyModel(n=5, t_pos=2.0, t_trans=0.1)
        fixed, flexible = latency_samples(access, model, np.random.default_rng(0), 1000)
        assert fixed.shape == (1000, 2)
        assert np.all(flexible >= 0.1)
        assert np.all(flexible <= 2.1)
        assert np.all(flexible <= fixed.min(axis=1))


class TestSampling:
    """Tests for the delay distributions."""

    def test_uniform(self) -> None:
        draws = sample_delays(
            DelayDistribution(kind=DelayKind.UNIFORM, low=1.0, high=3.0), np.random.default_rng(1), (500, 4)
        )
        assert draws.shape == (500, 4)
        assert draws.min() >= 1.0
        assert draws.max() < 3.0

    def test_shifted_exponential(self) -> None:
        distribution = DelayDistribution(kind=DelayKind.SHIFTED_EXPONENTIAL, scale=0.5, shift=2.0)
        draws = sample_delays(distribution, np.random.default_rng(2), (1000, 3))
        assert draws.min() >= 2.0

    def test_zero_scale(self) -> None:
        draws = sample_delays(DelayDistribution(scale=0.0), np.random.default_rng(3), (10, 2))
        assert np.all(draws == 0.0)


class TestMonteCarloEngine:
    """Tests for stream splitting and reproducibility."""

    def test_streams_cover_trials(self) -> None:
        sizes = [size for _, size in MonteCarloEngine(seed=1, stream_size=400).streams(1000)]
        assert sizes == [400, 400, 200]

    def test_reproducible(self, access: AccessProfile) -> None:
        model = LatencyModel(n=5, t_pos=1.0, t_trans=0.05)
        first = monte_carlo(access, model, trials=5000, seed=42)
        second = monte_carlo(access, model, trials=5000, seed=42)
        other = monte_carlo(access, model, trials=5000, seed=43)
        assert first == second
        assert first.flexible != other.flexible
        assert first.seed == 42
        assert first.trials == 5000

    def test_flexible_never_slower(self, access: AccessProfile) -> None:
        result = MonteCarloEngine(seed=5, stream_size=700).latency(access, LatencyModel(n=5, t_pos=1.0), 2000)
        assert result.flexible <= result.best_fixed
        assert result.std_error is not None and result.std_error > 0

    def test_single_trial_has_no_spread(self, access: AccessProfile) -> None:
        result = monte_carlo(access, LatencyModel(n=5, t_pos=1.0), trials=1, seed=0)
        assert result.std_error == 0.0
        assert result.fixed_std_error == (0.0, 0.0)

    def test_rejects_bad_sizes(self) -> None:
        with pytest.raises(LatencyParameterError):
            MonteCarloEngine(stream_size=0)
        with pytest.raises(LatencyParameterError):
            list(MonteCarloEngine().streams(0))


class TestCodedCompute:
    """Tests for the coded matrix-vector simulation."""

    def test_zero_delays(self, access: AccessProfile) -> None:
        """Without delays every worker returns l_j tasks after l_j task times."""
        result = simulate_coded_compute(access, 4, DelayDistribution(scale=0.0), 1.0, trials=100, seed=0)
        assert result.fixed_means == pytest.approx((1.0, 2.0))
        assert result.flexible_mean == pytest.approx(1.0)
        assert result.dominance == 1.0
        assert result.improvement_pct == pytest.approx(0.0)

    def test_constant_shift(self, access: AccessProfile) -> None:
        distribution = DelayDistribution(kind=DelayKind.SHIFTED_EXPONENTIAL, scale=0.0, shift=0.5)
        result = simulate_coded_compute(access, 4, distribution, 1.0, trials=10, seed=0)
        assert result.fixed_means == pytest.approx((1.5, 2.5))

    @pytest.mark.parametrize("kind", list(DelayKind))
    def test_flexible_dominates(self, kind: DelayKind) -> None:
        access = AccessProfile(recovery=(5, 4), rows=(12, 15))
        distribution = DelayDistribution(kind=kind, scale=2.0, shift=1.0, low=0.0, high=4.0)
        result = simulate_coded_compute(access, 8, distribution, 0.1, trials=20_000, seed=9)
        assert result.dominance == 1.0
        assert result.flexible_mean <= min(result.fixed_means)
        assert result.improvement_pct > 0.0
        assert result.seed == 9

    def test_negative_task_time(self, access: AccessProfile) -> None:
        with pytest.raises(LatencyParameterError):
            simulate_coded_compute(access, 4, DelayDistribution(), -1.0, trials=10)

    def test_compute_table(self, access: AccessProfile) -> None:
        results = [
            simulate_coded_compute(access, 4, DelayDistribution(scale=0.0), 1.0, trials=10, seed=0),
            simulate_coded_compute(
                access, 4, DelayDistribution(kind=DelayKind.UNIFORM, low=0.0, high=1.0), 1.0, trials=10, seed=0
            ),
        ]
        table = compute_table(results)
        assert table.columns == [
            "distribution",
            "scale",
            "shift",
            "low",
            "high",
            "E_fixed_1",
            "E_fixed_2",
            "E_flexible",
            "improvement_pct",
            "dominance",
            "trials",
            "seed",
        ]
        assert table["distribution"].to_list() == ["exponential", "uniform"]
        assert table["E_fixed_2"][0] == pytest.approx(2.0)
        assert table["trials"].to_list() == [10, 10]
