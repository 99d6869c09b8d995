# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Pydantic models for flexible profiles, layer plans and code arrays."""

from collections.abc import Sequence
from enum import Enum
from functools import cached_property

from galois import FieldArray
from pydantic import BaseModel, ConfigDict, Field


class CodeFamily(str, Enum):
    """Supported flexible code families."""

    MDS = "MDS"
    LRC = "LRC"
    PMDS = "PMDS"
    MSR = "MSR"


class LayerSpec(BaseModel):
    """One (R_j, k_j, l_j) tuple of a flexible profile."""

    model_config = ConfigDict(frozen=True)

    recovery: int = Field(..., ge=1, description="Recovery threshold R_j (nodes).")
    dimension: int = Field(..., ge=1, description="Layer dimension k_j.")
    rows: int = Field(..., ge=1, description="Cumulative rows l_j accessed per node.")


class FlexProfile(BaseModel):
    """
    Global parameters (n, k, l) of a flexible code and its recovery tuples.

    ``locality`` is the LRC parameter r; ``symbol_erasures`` the PMDS parameter s.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1, description="Number of storage nodes.")
    k: int = Field(..., ge=1, description="Dimension of the last layer (k_a).")
    sub_packetization: int = Field(..., ge=1, description="Rows per node (l = l_a).")
    layers: tuple[LayerSpec, ...] = Field(..., min_length=1, description="Tuples ordered by layer.")
    family: CodeFamily = Field(default=CodeFamily.MDS, description="Code family.")
    locality: int | None = Field(default=None, ge=1, description="LRC locality r.")
    symbol_erasures: int = Field(default=0, ge=0, description="PMDS extra symbol erasures s.")

    @classmethod
    def from_pairs(
        cls,
        n: int,
        pairs: Sequence[tuple[int, int]],
        family: CodeFamily = CodeFamily.MDS,
        locality: int | None = None,
        symbol_erasures: int = 0,
    ) -> "FlexProfile":
        """Build a profile from (k_j, l_j) pairs, deriving R_j from the family rule."""
        layers = []
        for dimension, rows in pairs:
            if family is CodeFamily.LRC and locality:
                recovery = dimension + dimension // locality - 1
            else:
                recovery = dimension
            layers.append(LayerSpec(recovery=recovery, dimension=dimension, rows=rows))
        return cls(
            n=n,
            k=pairs[-1][0],
            sub_packetization=pairs[-1][1],
            layers=tuple(layers),
            family=family,
            locality=locality,
            symbol_erasures=symbol_erasures,
        )

    @property
    def depth(self) -> int:
        """Number of layers a."""
        return len(self.layers)

    @property
    def info_symbols(self) -> int:
        """Information symbols k * l carried by one codeword array."""
        return self.k * self.sub_packetization


class LayerGeometry(BaseModel):
    """Inner-code geometry of one layer."""

    model_config = ConfigDict(frozen=True)

    index: int = Field(..., ge=1, description="Layer index j (1-based).")
    row_start: int = Field(..., ge=0, description="l_{j-1}: rows before this layer.")
    row_stop: int = Field(..., ge=1, description="l_j: last row of this layer.")
    recovery: int = Field(..., description="R_j.")
    dimension: int = Field(..., description="Inner dimension k_j.")
    inner_length: int = Field(..., description="Inner length n + k_j - k_a.")
    extra_count: int = Field(..., ge=0, description="Extra parities per row, k_j - k_a.")

    @property
    def row_count(self) -> int:
        return self.row_stop - self.row_start


class ExtraParityRef(BaseModel):
    """Identification of extra parity (j, x, y) with information slot (j', x', y')."""

    model_config = ConfigDict(frozen=True)

    source_layer: int
    source_row: int
    source_index: int
    target_layer: int
    target_row: int
    target_index: int

    @property
    def source(self) -> tuple[int, int, int]:
        return (self.source_layer, self.source_row, self.source_index)

    @property
    def target(self) -> tuple[int, int, int]:
        return (self.target_layer, self.target_row, self.target_index)


class LayerPlan(BaseModel):
    """Validated layer geometry plus the extra-parity identification map."""

    model_config = ConfigDict(frozen=True)

    profile: FlexProfile
    layers: tuple[LayerGeometry, ...]
    references: tuple[ExtraParityRef, ...]

    def layer(self, j: int) -> LayerGeometry:
        return self.layers[j - 1]

    @cached_property
    def by_source(self) -> dict[tuple[int, int, int], ExtraParityRef]:
        return {ref.source: ref for ref in self.references}

    @cached_property
    def by_target(self) -> dict[tuple[int, int, int], ExtraParityRef]:
        return {ref.target: ref for ref in self.references}

    def target_of(self, j: int, x: int, y: int) -> ExtraParityRef:
        return self.by_source[(j, x, y)]

    def source_of(self, j: int, x: int, y: int) -> ExtraParityRef:
        return self.by_target[(j, x, y)]


class CodewordArray(BaseModel):
    """
    Stored code array: l rows by n nodes, each cell a block of ``block_size`` symbols.

    ``symbols`` has shape (l, n, block_size); scalar codes use block_size 1.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    profile: FlexProfile
    symbols: FieldArray

    @property
    def block_size(self) -> int:
        return int(self.symbols.shape[2])

    def node(self, index: int) -> FieldArray:
        """All l blocks of node ``index`` (0-based), shape (l, block_size)."""
        return self.symbols[:, index, :]

    def read(self, nodes: Sequence[int], rows: int) -> FieldArray:
        """First ``rows`` rows of the given nodes, shape (rows, len(nodes), block_size)."""
        return self.symbols[:rows, list(nodes), :]
