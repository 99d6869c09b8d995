# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Pydantic models for flexible MSR codes: construction parameters, coefficients and reports."""

from enum import Enum

from galois import FieldArray
from pydantic import BaseModel, ConfigDict, Field

from coreason_flexcode.field import CosetPartition, FieldSpec


class CoefficientStrategy(str, Enum):
    """How additional coefficients are spread over rows."""

    PER_ROW = "per-row"
    PER_LAYER = "per-layer"


class YeBargSpec(BaseModel):
    """
    Parameters of the diagonal-matrix MSR parity checks.

    Node i (0-based) uses A_i = diag(lambda_{i, digit_i(z)}) for z < L, where
    digit_i(z) is the i-th base-r digit of z.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=2, description="Nodes.")
    k: int = Field(..., ge=1, description="Dimension k_a.")
    base: FieldSpec = Field(..., description="Field E holding the lambdas.")
    ambient: FieldSpec = Field(..., description="Extension F holding the code symbols.")
    lambdas: tuple[tuple[int, ...], ...] = Field(..., description="lambda_{i,z} as integers of E, n rows of r.")
    cosets: CosetPartition = Field(..., description="Coefficient candidates: coset representatives of E* in F*.")

    @property
    def r(self) -> int:
        return self.n - self.k

    @property
    def sub_packetization(self) -> int:
        """L = r^n."""
        return int(self.r**self.n)

    def digit(self, i: int, z: int) -> int:
        return (z // self.r**i) % self.r


class CoefficientTable(BaseModel):
    """Additional coefficient of every (layer, row); extra-parity columns reuse their target's."""

    model_config = ConfigDict(frozen=True)

    strategy: CoefficientStrategy
    reps: tuple[int, ...] = Field(..., description="Coset representatives as integers of F.")
    assignment: tuple[tuple[int, ...], ...] = Field(..., description="Index into reps, per layer and row.")

    def index(self, j: int, x: int) -> int:
        return self.assignment[j - 1][x - 1]

    def value(self, j: int, x: int) -> int:
        return self.reps[self.index(j, x)]


class RepairMatrices(BaseModel):
    """S_1..S_n, each L x rL, built as r diagonal copies of D_*."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    matrices: tuple[FieldArray, ...]

    def __getitem__(self, node: int) -> FieldArray:
        return self.matrices[node]

    def __len__(self) -> int:
        return len(self.matrices)


class RepairReport(BaseModel):
    """Bandwidth accounting of a single-node repair, in field symbols."""

    model_config = ConfigDict(frozen=True)

    node: int = Field(..., description="Repaired node (0-based).")
    helpers: tuple[int, ...] = Field(..., description="Nodes that transmitted.")
    rows: int = Field(..., description="Rows repaired (l).")
    bandwidth: int = Field(..., description="Symbols transmitted by all helpers.")
    optimal_bandwidth: int = Field(..., description="l (n-1) L / r.")
    naive_bandwidth: int = Field(..., description="l k L, the cost of decoding everything.")


class AuditReport(BaseModel):
    """Outcome of the MSR property checks; ``None`` marks a check that does not apply."""

    model_config = ConfigDict(frozen=True)

    mds_vandermonde: bool | None = Field(default=None, description="Distinct beta*lambda per diagonal.")
    mds_exhaustive: bool = Field(..., description="Every r-column erasure is solvable in every row.")
    rank_condition: bool = Field(..., description="rank(S_* h_i) is L for i=* and L/r otherwise.")
    condition_one: bool = Field(..., description="Coefficients on the same node differ within each row.")
    violations: tuple[str, ...] = Field(default=(), description="Human-readable failures.")

    @property
    def passed(self) -> bool:
        return self.mds_vandermonde is not False and self.mds_exhaustive and self.rank_condition and self.condition_one
