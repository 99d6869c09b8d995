# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Tests for the closed-form and quadrature latency expectations."""

import itertools

import pytest
from scipy.special import betainc

from coreason_flexcode.config import FlexConfig
from coreason_flexcode.exceptions import LatencyParameterError
from coreason_flexcode.latency import (
    AccessProfile,
    LatencyModel,
    expected_fixed,
    expected_flexible,
    expected_flexible_2layer,
    expected_flexible_numeric,
    expected_order_statistic,
    latency_sweep,
    monte_carlo,
    reg_inc_beta,
    sweep_grid,
)


@pytest.fixture(name="disk")
def disk_profile() -> AccessProfile:
    """Sixteen disks: 15 nodes read 4 rows or 12 nodes read 5 rows."""
    return AccessProfile(recovery=FlexConfig.SWEEP_RECOVERY, rows=FlexConfig.SWEEP_ROWS)


class TestIncompleteBeta:
    """Tests for reg_inc_beta."""

    @pytest.mark.parametrize(
        "x, a, b",
        list(itertools.product([0.01, 0.2, 0.5, 0.83, 0.99], [0.5, 1.0, 3.0, 14.0], [1.0, 2.5, 14.0])),
    )
    def test_matches_scipy(self, x: float, a: float, b: float) -> None:
        assert reg_inc_beta(x, a, b) == pytest.approx(float(betainc(a, b, x)), abs=1e-10)

    @pytest.mark.parametrize("x, a, b", [(0.3, 2.0, 5.0), (0.7, 3.0, 14.0), (0.05, 1.5, 0.5)])
    def test_symmetry(self, x: float, a: float, b: float) -> None:
        """I_x(a, b) = 1 - I_{1-x}(b, a)."""
        assert reg_inc_beta(x, a, b) == pytest.approx(1.0 - reg_inc_beta(1.0 - x, b, a), abs=1e-12)

    def test_endpoints(self) -> None:
        assert reg_inc_beta(0.0, 2.0, 3.0) == 0.0
        assert reg_inc_beta(1.0, 2.0, 3.0) == 1.0

    @pytest.mark.parametrize("x, a, b", [(-0.1, 1.0, 1.0), (1.5, 1.0, 1.0), (0.5, 0.0, 1.0), (0.5, 1.0, -2.0)])
    def test_rejects_bad_arguments(self, x: float, a: float, b: float) -> None:
        with pytest.raises(LatencyParameterError):
            reg_inc_beta(x, a, b)


class TestFixedCodes:
    """Tests for the order-statistic expectations of fixed codes."""

    def test_order_statistic(self) -> None:
        assert expected_order_statistic(16, 15, 1.0) == pytest.approx(15 / 17)
        assert expected_order_statistic(8, 4, 2.0) == pytest.approx(8 / 9)

    def test_fixed(self) -> None:
        model = LatencyModel(n=16, t_pos=1.0, t_trans=0.1)
        assert expected_fixed(16, 12, 5, model) == pytest.approx(12 / 17 + 0.5)

    def test_rejects_bad_arguments(self) -> None:
        model = LatencyModel(n=4, t_pos=1.0)
        with pytest.raises(LatencyParameterError):
            expected_fixed(4, 5, 1, model)
        with pytest.raises(LatencyParameterError):
            expected_fixed(4, 2, 0, model)


class TestFlexibleCodes:
    """Tests for E[min_j T_j]."""

    @pytest.mark.parametrize("t_trans", [0.0, 0.02, 0.05, 3 / 17, 0.3])
    def test_closed_form_matches_quadrature(self, disk: AccessProfile, t_trans: float) -> None:
        model = LatencyModel(n=16, t_pos=1.0, t_trans=t_trans)
        closed = expected_flexible_2layer(disk, model)
        assert closed.flexible == pytest.approx(expected_flexible_numeric(disk, model), rel=1e-8)
        assert closed.flexible <= closed.best_fixed

    def test_no_transfer_cost(self, disk: AccessProfile) -> None:
        """Without transfer time the 12-node pattern always finishes first."""
        result = expected_flexible_2layer(disk, LatencyModel(n=16, t_pos=1.0, t_trans=0.0))
        assert result.flexible == pytest.approx(12 / 17)

    def test_large_transfer_gap(self) -> None:
        """Once (l_2 - l_1) t_trans exceeds t_pos the first layer always wins."""
        access = AccessProfile(recovery=(5, 4), rows=(12, 15))
        model = LatencyModel(n=8, t_pos=1.0, t_trans=0.5)
        result = expected_flexible_2layer(access, model)
        assert result.flexible == result.fixed[0]
        assert result.savings[0] == 0.0

    def test_equal_fixed_latency(self, disk: AccessProfile) -> None:
        """At t_trans = 3/17 both fixed codes cost 27/17 and the flexible code saves about 2.26%."""
        result = expected_flexible(disk, LatencyModel(n=16, t_pos=1.0, t_trans=3 / 17))
        assert result.fixed[0] == pytest.approx(27 / 17)
        assert result.fixed[1] == pytest.approx(27 / 17)
        assert result.savings_pct_vs_best_fixed == pytest.approx(2.2565, abs=0.005)

    def test_closed_form_matches_simulation(self, disk: AccessProfile) -> None:
        model = LatencyModel(n=16, t_pos=1.0, t_trans=0.03)
        closed = expected_flexible(disk, model)
        sampled = monte_carlo(disk, model, trials=200_000, seed=7)
        assert sampled.std_error is not None
        assert abs(closed.flexible - sampled.flexible) <= 5 * sampled.std_error
        assert sampled.fixed_std_error is not None
        for exact, mean, se in zip(closed.fixed, sampled.fixed, sampled.fixed_std_error, strict=True):
            assert abs(exact - mean) <= 5 * se

    def test_three_layers(self) -> None:
        access = AccessProfile(recovery=(4, 3, 2), rows=(3, 4, 6))
        model = LatencyModel(n=6, t_pos=1.0, t_trans=0.1)
        result = expected_flexible(access, model)
        assert len(result.fixed) == 3
        assert result.flexible < result.best_fixed
        sampled = monte_carlo(access, model, trials=200_000, seed=11)
        assert sampled.std_error is not None
        assert abs(result.flexible - sampled.flexible) <= 5 * sampled.std_error

    def test_closed_form_needs_two_layers(self) -> None:
        access = AccessProfile(recovery=(4, 3, 2), rows=(3, 4, 6))
        with pytest.raises(LatencyParameterError):
            expected_flexible_2layer(access, LatencyModel(n=6, t_pos=1.0))

    def test_threshold_above_nodes(self, disk: AccessProfile) -> None:
        with pytest.raises(LatencyParameterError):
            expected_flexible_numeric(disk, LatencyModel(n=8, t_pos=1.0))


class TestSweep:
    """Tests for the sweep grid and table."""

    def test_default_grid(self) -> None:
        grid = sweep_grid()
        assert len(grid) == 36
        assert grid[0] == 0.0
        assert grid[-1] == pytest.approx(0.35)

    def test_bad_grid(self) -> None:
        with pytest.raises(LatencyParameterError):
            sweep_grid(0.35, 0)
        with pytest.raises(LatencyParameterError):
            sweep_grid(-1.0, 5)

    def test_table(self, disk: AccessProfile) -> None:
        frame = latency_sweep(disk, 16, 1.0, [0.0, 3 / 17, 0.35])
        assert frame.columns == ["t_trans", "E_fixed_1", "E_fixed_2", "E_flexible", "savings_pct_vs_best_fixed"]
        assert frame.height == 3
        assert 2.0 <= frame["savings_pct_vs_best_fixed"].max() <= 5.0
        assert (frame["E_flexible"] <= frame["E_fixed_1"]).all()
        assert (frame["E_flexible"] <= frame["E_fixed_2"]).all()

    def test_table_with_simulation(self, disk: AccessProfile) -> None:
        frame = latency_sweep(disk, 16, 1.0, [0.05], mc_trials=50_000, seed=3)
        assert "E_flexible_mc" in frame.columns
        row = frame.row(0, named=True)
        assert abs(row["E_flexible"] - row["E_flexible_mc"]) <= 5 * row["se_flexible_mc"]
