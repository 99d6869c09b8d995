# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""
Seeded Monte Carlo for access latency and coded matrix-vector completion.

Trials are split into streams of FlexConfig.STREAM_SIZE; stream s draws from a
Philox generator seeded by the s-th child of SeedSequence(seed), so results depend
only on (seed, trials).
"""

import math
from collections.abc import Iterator, Sequence

import numpy as np
import polars as pl
from numpy.typing import NDArray

from coreason_flexcode.config import FlexConfig
from coreason_flexcode.exceptions import LatencyParameterError
from coreason_flexcode.latency.models import (
    AccessProfile,
    ComputeResult,
    DelayDistribution,
    DelayKind,
    LatencyModel,
    LatencyResult,
)
from coreason_flexcode.utils.logger import logger


def completion_times(
    delays: NDArray[np.float64],
    access: AccessProfile,
    per_row: float,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
    Finish times of every fixed pattern and of the flexible minimum.

    Args:
        delays: (trials, n) start-up delays or positioning times.
        access: Layer tuples (R_j, l_j).
        per_row: Time per row (transfer time or per-task compute time).

    Returns:
        (trials, a) fixed times R_j-th smallest delay + l_j * per_row, and the (trials,) row minimum.
    """
    n = delays.shape[1]
    if max(access.recovery) > n:
        raise LatencyParameterError(f"Recovery threshold {max(access.recovery)} exceeds {n} workers")
    ordered = np.sort(delays, axis=1)
    fixed = np.stack(
        [ordered[:, r - 1] + rows * per_row for r, rows in zip(access.recovery, access.rows, strict=True)],
        axis=1,
    )
    return fixed, fixed.min(axis=1)


def sample_delays(
    distribution: DelayDistribution,
    rng: np.random.Generator,
    size: tuple[int, int],
) -> NDArray[np.float64]:
    """Draw worker delays from the configured distribution."""
    if distribution.kind is DelayKind.UNIFORM:
        return rng.uniform(distribution.low, distribution.high, size=size)
    draws = rng.exponential(distribution.scale, size=size) if distribution.scale > 0 else np.zeros(size)
    if distribution.kind is DelayKind.SHIFTED_EXPONENTIAL:
        draws = draws + distribution.shift
    return draws


def latency_samples(
    access: AccessProfile,
    model: LatencyModel,
    rng: np.random.Generator,
    size: int,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """One positioning draw per node per trial, shared by every layer."""
    positions = rng.uniform(0.0, model.t_pos, size=(size, model.n))
    return completion_times(positions, access, model.t_trans)


class _Moments:
    """Streaming sums for means and standard errors."""

    def __init__(self, width: int) -> None:
        self.count = 0
        self.total = np.zeros(width)
        self.squares = np.zeros(width)

    def add(self, values: NDArray[np.float64]) -> None:
        self.count += values.shape[0]
        self.total += values.sum(axis=0)
        self.squares += (values**2).sum(axis=0)

    def mean(self) -> NDArray[np.float64]:
        return self.total / self.count

    def std_error(self) -> NDArray[np.float64]:
        if self.count < 2:
            return np.zeros_like(self.total)
        variance = (self.squares - self.total**2 / self.count) / (self.count - 1)
        return np.sqrt(np.maximum(variance, 0.0) / self.count)


class MonteCarloEngine:
    """Runs seeded trials in independent Philox streams."""

    def __init__(self, seed: int = FlexConfig.DEFAULT_SEED, stream_size: int = FlexConfig.STREAM_SIZE) -> None:
        if stream_size < 1:
            raise LatencyParameterError(f"Stream size must be positive, got {stream_size}")
        self.seed = seed
        self.stream_size = stream_size
        self.logger = logger.bind(agent="MonteCarloEngine")

    def streams(self, trials: int) -> Iterator[tuple[np.random.Generator, int]]:
        """Yield (generator, batch size) pairs covering ``trials``."""
        if trials < 1:
            raise LatencyParameterError(f"Trials must be positive, got {trials}")
        count = math.ceil(trials / self.stream_size)
        children = np.random.SeedSequence(self.seed).spawn(count)
        for s, child in enumerate(children):
            yield np.random.Generator(np.random.Philox(child)), min(self.stream_size, trials - s * self.stream_size)

    def latency(self, access: AccessProfile, model: LatencyModel, trials: int) -> LatencyResult:
        stats = _Moments(access.depth + 1)
        for rng, size in self.streams(trials):
            fixed, flexible = latency_samples(access, model, rng, size)
            stats.add(np.column_stack([fixed, flexible]))
        means, errors = stats.mean(), stats.std_error()
        result = LatencyResult(
            fixed=tuple(float(v) for v in means[:-1]),
            flexible=float(means[-1]),
            trials=trials,
            seed=self.seed,
            std_error=float(errors[-1]),
            fixed_std_error=tuple(float(v) for v in errors[:-1]),
        )
        self.logger.debug(f"{trials} latency trials (seed {self.seed}): flexible {result.flexible:.6f}")
        return result

    def compute(
        self,
        access: AccessProfile,
        n: int,
        distribution: DelayDistribution,
        task_time: float,
        trials: int,
    ) -> ComputeResult:
        if task_time < 0:
            raise LatencyParameterError(f"Task time must be non-negative, got {task_time}")
        stats = _Moments(access.depth + 1)
        dominated = 0
        for rng, size in self.streams(trials):
            fixed, flexible = completion_times(sample_delays(distribution, rng, (size, n)), access, task_time)
            dominated += int(np.count_nonzero((flexible[:, None] <= fixed).all(axis=1)))
            stats.add(np.column_stack([fixed, flexible]))
        means = stats.mean()
        result = ComputeResult(
            distribution=distribution,
            fixed_means=tuple(float(v) for v in means[:-1]),
            flexible_mean=float(means[-1]),
            dominance=dominated / trials,
            trials=trials,
            seed=self.seed,
        )
        self.logger.info(
            f"Coded compute ({distribution.kind.value}): flexible {result.flexible_mean:.4f} "
            f"vs best fixed {min(result.fixed_means):.4f} ({result.improvement_pct:.2f}% faster)"
        )
        return result


def monte_carlo(
    access: AccessProfile,
    model: LatencyModel,
    trials: int = FlexConfig.DEFAULT_TRIALS,
    seed: int = FlexConfig.DEFAULT_SEED,
) -> LatencyResult:
    """Sample mean latency of every fixed pattern and of the flexible minimum."""
    return MonteCarloEngine(seed).latency(access, model, trials)


def simulate_coded_compute(
    access: AccessProfile,
    n: int,
    distribution: DelayDistribution,
    task_time: float,
    trials: int = FlexConfig.DEFAULT_TRIALS,
    seed: int = FlexConfig.DEFAULT_SEED,
) -> ComputeResult:
    """
    Simulate row-wise coded matrix-vector multiplication on n workers.

    Worker i starts after its delay and finishes one encoded row task every
    ``task_time``; the master finishes once R_j workers have each returned l_j tasks
    for some j.
    """
    return MonteCarloEngine(seed).compute(access, n, distribution, task_time, trials)


def compute_table(results: Sequence[ComputeResult]) -> pl.DataFrame:
    """
    One row per simulated delay distribution.

    Columns: distribution, scale, shift, low, high, E_fixed_1..E_fixed_a, E_flexible,
    improvement_pct, dominance, trials and seed.
    """
    records = []
    for result in results:
        delay = result.distribution
        row: dict[str, str | float | int] = {
            "distribution": delay.kind.value,
            "scale": delay.scale,
            "shift": delay.shift,
            "low": delay.low,
            "high": delay.high,
        }
        for j, value in enumerate(result.fixed_means, start=1):
            row[f"E_fixed_{j}"] = value
        row["E_flexible"] = result.flexible_mean
        row["improvement_pct"] = result.improvement_pct
        row["dominance"] = result.dominance
        row["trials"] = result.trials
        row["seed"] = result.seed
        records.append(row)
    return pl.DataFrame(records)
