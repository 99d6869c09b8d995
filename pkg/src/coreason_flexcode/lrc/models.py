# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Evaluation-group layout and locality report models for flexible LRCs."""

import galois
from galois import FieldArray
from pydantic import BaseModel, ConfigDict, Field

from coreason_flexcode.field import FieldSpec


class LrcLayout(BaseModel):
    """
    Evaluation groups of a flexible LRC.

    Stored node p sits on member p % (r+1) of group p // (r+1). Extra groups
    follow the stored ones; their first r points carry extra parities and the
    last point is only ever reconstructed through locality.
    """

    model_config = ConfigDict(frozen=True)

    field: FieldSpec = Field(..., description="Evaluation field.")
    n: int = Field(..., ge=1, description="Stored nodes.")
    locality: int = Field(..., ge=1, description="Locality r.")
    groups: tuple[tuple[int, ...], ...] = Field(..., description="Stored groups A_1..A_{n/(r+1)} as integers.")
    extra_groups: tuple[tuple[int, ...], ...] = Field(
        default=(), description="Extra groups for the largest layer, (k_1 - k_a)/r of them."
    )

    @property
    def group_size(self) -> int:
        return self.locality + 1

    @property
    def good_degree(self) -> int:
        """Degree of the good polynomial g(x) = x^(r+1)."""
        return self.locality + 1

    def good_polynomial(self) -> galois.Poly:
        gf = self.field.galois_field()
        return galois.Poly.Degrees([self.good_degree], field=gf)

    def group_of(self, node: int) -> int:
        return node // self.group_size

    def peers(self, node: int) -> list[int]:
        """The r other nodes of ``node``'s group."""
        start = self.group_of(node) * self.group_size
        return [p for p in range(start, start + self.group_size) if p != node]

    def stored_points(self) -> FieldArray:
        return self.field.galois_field()([p for group in self.groups for p in group])

    def extra_points(self, count: int) -> FieldArray:
        """The first ``count`` extra points, r per extra group."""
        gf = self.field.galois_field()
        r = self.locality
        if count == 0:
            return gf.Zeros(0)
        return gf([self.extra_groups[y // r][y % r] for y in range(count)])

    def omitted_points(self, count: int) -> FieldArray:
        """Last member of each extra group serving ``count`` extra parities."""
        gf = self.field.galois_field()
        groups = self.extra_groups[: count // self.locality]
        if not groups:
            return gf.Zeros(0)
        return gf([group[self.locality] for group in groups])


class LocalityReport(BaseModel):
    """Outcome of the layout checks."""

    model_config = ConfigDict(frozen=True)

    constant_on_groups: bool = Field(..., description="g takes one value on every group.")
    disjoint: bool = Field(..., description="No point appears in two groups.")
    group_values: tuple[int, ...] = Field(..., description="Value of g on each group, stored groups first.")

    @property
    def ok(self) -> bool:
        return self.constant_on_groups and self.disjoint
