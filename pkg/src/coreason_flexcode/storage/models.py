# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Pydantic models for profile configs, shard metadata, manifests and command reports."""

from enum import Enum

from galois import FieldArray
from pydantic import BaseModel, ConfigDict, Field

from coreason_flexcode.config import FlexConfig
from coreason_flexcode.field import FieldSpec
from coreason_flexcode.latency import DelayDistribution
from coreason_flexcode.layered import CodeFamily, FlexProfile, LayerSpec
from coreason_flexcode.msr import CoefficientStrategy


class Construction(str, Enum):
    """Which code a profile config builds."""

    STANDARD = "standard"
    REFERENCE = "reference"


class LayerConfig(BaseModel):
    """One (k_j, l_j) tuple; R_j defaults to the family rule."""

    model_config = ConfigDict(frozen=True)

    dimension: int = Field(..., ge=1, description="Layer dimension k_j.")
    rows: int = Field(..., ge=1, description="Cumulative rows l_j.")
    recovery: int | None = Field(default=None, ge=1, description="Stated recovery threshold R_j.")


class ProfileConfig(BaseModel):
    """User-facing description of a flexible code, loaded from JSON."""

    model_config = ConfigDict(frozen=True)

    family: CodeFamily = Field(..., description="MDS, LRC, PMDS or MSR.")
    n: int = Field(..., ge=1, description="Number of nodes.")
    k: int = Field(..., ge=1, description="Dimension of the last layer.")
    sub_packetization: int = Field(..., ge=1, description="Rows per node l.")
    layers: tuple[LayerConfig, ...] = Field(..., min_length=1, description="Layer tuples in order.")
    locality: int | None = Field(default=None, ge=1, description="LRC locality r.")
    symbol_erasures: int = Field(default=0, ge=0, description="PMDS extra symbol erasures s.")
    field: FieldSpec | None = Field(default=None, description="Field override (PMDS: the base field GF(q)).")
    construction: Construction = Field(default=Construction.STANDARD, description="standard or reference.")
    coefficient_strategy: CoefficientStrategy = Field(
        default=CoefficientStrategy.PER_LAYER, description="MSR coefficient assignment."
    )

    def to_profile(self) -> FlexProfile:
        """FlexProfile with stated thresholds kept and missing ones derived."""
        derived = FlexProfile.from_pairs(
            self.n,
            [(layer.dimension, layer.rows) for layer in self.layers],
            family=self.family,
            locality=self.locality,
            symbol_erasures=self.symbol_erasures,
        )
        layers: list[LayerSpec] = []
        for spec, layer in zip(derived.layers, self.layers, strict=True):
            layers.append(spec if layer.recovery is None else spec.model_copy(update={"recovery": layer.recovery}))
        return derived.model_copy(
            update={"k": self.k, "sub_packetization": self.sub_packetization, "layers": tuple(layers)}
        )


class ShardMeta(BaseModel):
    """JSON metadata embedded in every shard header."""

    model_config = ConfigDict(frozen=True)

    config: ProfileConfig
    field: FieldSpec = Field(..., description="Field of the stored symbols, modulus included.")
    node: int = Field(..., ge=0, description="0-based node index.")
    block_size: int = Field(..., ge=1, description="Symbols per cell (L for MSR, else 1).")
    stripes: int = Field(..., ge=1, description="Codeword arrays in the payload.")
    original_length: int = Field(..., ge=0, description="Bytes of the encoded file.")
    bits_per_symbol: int = Field(..., ge=1, description="Payload bits packed into each information symbol.")
    payload_md5: str = Field(default="", description="MD5 hex digest of the payload.")


class Shard(BaseModel):
    """A decoded shard: header metadata plus its symbols of shape (stripes, l, block_size)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    format_version: int
    meta: ShardMeta
    symbols: FieldArray = Field(..., description="Shape (stripes, l, block_size).")


class Manifest(BaseModel):
    """Per-encoding record written next to the shards."""

    model_config = ConfigDict(frozen=True)

    format_version: int = Field(default=FlexConfig.SHARD_FORMAT_VERSION)
    config: ProfileConfig
    field: FieldSpec
    original_length: int = Field(..., ge=0)
    stripes: int = Field(..., ge=1)
    bits_per_symbol: int = Field(..., ge=1)
    block_size: int = Field(..., ge=1)
    shards: dict[str, str] = Field(..., description="Shard file name to MD5 hex digest.")


class DecodeReport(BaseModel):
    """Which access pattern a decode used and what it read."""

    model_config = ConfigDict(frozen=True)

    layer: int
    recovery: int
    rows: int
    nodes: tuple[int, ...]
    symbols_read: int
    stripes: int
    length: int


class RepairOutcome(BaseModel):
    """Bandwidth accounting of a shard-level repair, in field symbols over all stripes."""

    model_config = ConfigDict(frozen=True)

    node: int
    family: CodeFamily
    method: str = Field(..., description="local, regenerating or decode-reencode.")
    helpers: tuple[int, ...]
    bandwidth: int
    naive_bandwidth: int
    optimal_bandwidth: int | None = None
    stripes: int


class AuditSummary(BaseModel):
    """Family-appropriate property checks of a configured code."""

    model_config = ConfigDict(frozen=True)

    family: CodeFamily
    checks: dict[str, bool | None]
    violations: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return all(value is not False for value in self.checks.values()) and not self.violations


class ComputeConfig(BaseModel):
    """Optional coded matrix-vector simulation attached to a latency run."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1, description="Workers.")
    recovery: tuple[int, ...] = Field(..., description="R_j per layer.")
    rows: tuple[int, ...] = Field(..., description="Tasks l_j per worker per layer.")
    task_time: float = Field(default=1.0, ge=0, description="Time per encoded row task.")
    distributions: tuple[DelayDistribution, ...] = Field(..., min_length=1, description="Delay models to compare.")
    trials: int = Field(default=FlexConfig.DEFAULT_TRIALS, ge=1)


class LatencyConfig(BaseModel):
    """Latency sweep parameters; defaults reproduce the 16-node disk scenario."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(default=FlexConfig.SWEEP_NODES, ge=1)
    recovery: tuple[int, ...] = Field(default=FlexConfig.SWEEP_RECOVERY)
    rows: tuple[int, ...] = Field(default=FlexConfig.SWEEP_ROWS)
    t_pos: float = Field(default=FlexConfig.SWEEP_T_POS, gt=0)
    t_trans_max: float = Field(default=FlexConfig.SWEEP_T_TRANS_MAX, ge=0)
    points: int = Field(default=FlexConfig.SWEEP_POINTS, ge=1)
    mc_trials: int | None = Field(default=None, ge=1, description="Add Monte Carlo columns when set.")
    compute: ComputeConfig | None = None
