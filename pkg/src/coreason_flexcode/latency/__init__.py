# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Access latency of fixed and flexible codes."""

from coreason_flexcode.latency.analytic import (
    expected_fixed,
    expected_flexible,
    expected_flexible_2layer,
    expected_flexible_numeric,
    expected_order_statistic,
    latency_sweep,
    reg_inc_beta,
    sweep_grid,
)
from coreason_flexcode.latency.models import (
    AccessProfile,
    ComputeResult,
    DelayDistribution,
    DelayKind,
    LatencyModel,
    LatencyResult,
)
from coreason_flexcode.latency.simulation import (
    MonteCarloEngine,
    completion_times,
    compute_table,
    latency_samples,
    monte_carlo,
    sample_delays,
    simulate_coded_compute,
)

__all__ = [
    "AccessProfile",
    "ComputeResult",
    "DelayDistribution",
    "DelayKind",
    "LatencyModel",
    "LatencyResult",
    "MonteCarloEngine",
    "completion_times",
    "compute_table",
    "expected_fixed",
    "expected_flexible",
    "expected_flexible_2layer",
    "expected_flexible_numeric",
    "expected_order_statistic",
    "latency_samples",
    "latency_sweep",
    "monte_carlo",
    "reg_inc_beta",
    "sample_delays",
    "simulate_coded_compute",
    "sweep_grid",
]
