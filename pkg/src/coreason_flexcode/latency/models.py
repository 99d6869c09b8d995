# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Pydantic models for the access-latency engine."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from coreason_flexcode.layered import FlexProfile


class LatencyModel(BaseModel):
    """Hard-disk access model: Uniform(0, t_pos) positioning plus l * t_trans transfer."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1, description="Number of nodes.")
    t_pos: float = Field(..., gt=0, description="Maximum positioning time.")
    t_trans: float = Field(default=0.0, ge=0, description="Transfer time per symbol.")


class AccessProfile(BaseModel):
    """Access tuples (R_j, l_j) of a flexible code, R strictly decreasing and l strictly increasing."""

    model_config = ConfigDict(frozen=True)

    recovery: tuple[int, ...] = Field(..., min_length=1, description="Recovery thresholds R_j.")
    rows: tuple[int, ...] = Field(..., min_length=1, description="Rows l_j read per node.")

    @model_validator(mode="after")
    def check_order(self) -> "AccessProfile":
        if len(self.recovery) != len(self.rows):
            raise ValueError("recovery and rows must have the same length")
        if any(r < 1 for r in self.recovery) or any(row < 1 for row in self.rows):
            raise ValueError("recovery thresholds and rows must be positive")
        for j in range(1, len(self.rows)):
            if self.recovery[j] >= self.recovery[j - 1] or self.rows[j] <= self.rows[j - 1]:
                raise ValueError("R_j must decrease and l_j must increase across layers")
        return self

    @classmethod
    def from_profile(cls, profile: FlexProfile) -> "AccessProfile":
        return cls(
            recovery=tuple(layer.recovery for layer in profile.layers),
            rows=tuple(layer.rows for layer in profile.layers),
        )

    @property
    def depth(self) -> int:
        return len(self.recovery)


class LatencyResult(BaseModel):
    """Expected latencies of every fixed access pattern and of the flexible minimum."""

    model_config = ConfigDict(frozen=True)

    fixed: tuple[float, ...] = Field(..., description="E[T_j] for each layer.")
    flexible: float = Field(..., description="E[min_j T_j].")
    trials: int | None = Field(default=None, description="Monte Carlo sample count.")
    seed: int | None = Field(default=None, description="Monte Carlo seed.")
    std_error: float | None = Field(default=None, description="Standard error of the flexible mean.")
    fixed_std_error: tuple[float, ...] | None = Field(default=None, description="Standard errors of E[T_j].")

    @property
    def savings(self) -> tuple[float, ...]:
        """E[T_j] - E[T_flexible] per layer."""
        return tuple(value - self.flexible for value in self.fixed)

    @property
    def best_fixed(self) -> float:
        return min(self.fixed)

    @property
    def savings_pct_vs_best_fixed(self) -> float:
        return 100.0 * (self.best_fixed - self.flexible) / self.best_fixed

    @property
    def ci_half_width(self) -> float | None:
        """95% normal confidence half-width of the flexible mean."""
        return None if self.std_error is None else 1.96 * self.std_error


class DelayKind(str, Enum):
    """Worker start-up delay distributions."""

    UNIFORM = "uniform"
    EXPONENTIAL = "exponential"
    SHIFTED_EXPONENTIAL = "shifted-exponential"


class DelayDistribution(BaseModel):
    """Per-worker delay before it starts its sequential tasks."""

    model_config = ConfigDict(frozen=True)

    kind: DelayKind = Field(default=DelayKind.EXPONENTIAL, description="Distribution family.")
    scale: float = Field(default=1.0, ge=0, description="Exponential mean.")
    shift: float = Field(default=0.0, ge=0, description="Constant added to shifted-exponential delays.")
    low: float = Field(default=0.0, ge=0, description="Uniform lower bound.")
    high: float = Field(default=1.0, ge=0, description="Uniform upper bound.")

    @model_validator(mode="after")
    def check_bounds(self) -> "DelayDistribution":
        if self.high < self.low:
            raise ValueError("Uniform upper bound is below the lower bound")
        return self


class ComputeResult(BaseModel):
    """Completion statistics of the coded matrix-vector simulation."""

    model_config = ConfigDict(frozen=True)

    distribution: DelayDistribution
    fixed_means: tuple[float, ...] = Field(..., description="Mean completion waiting for (R_j, l_j).")
    flexible_mean: float = Field(..., description="Mean of the per-trial minimum.")
    dominance: float = Field(..., description="Fraction of trials where flexible <= every fixed time.")
    trials: int
    seed: int

    @property
    def improvement_pct(self) -> float:
        best = min(self.fixed_means)
        return 100.0 * (best - self.flexible_mean) / best
