# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Gabidulin outer code descriptor."""

from galois import FieldArray
from pydantic import BaseModel, ConfigDict, Field, model_validator

from coreason_flexcode.field import FieldSpec


class GabidulinCode(BaseModel):
    """
    Evaluation code of f(x) = sum_{i<K} u_i x^(q^i) at N points of GF(q^N).

    The points are linearly independent over GF(q).
    """

    model_config = ConfigDict(frozen=True)

    base: FieldSpec = Field(..., description="Base field GF(q).")
    field: FieldSpec = Field(..., description="Extension GF(q^N).")
    length: int = Field(..., ge=1, description="Number of evaluation points N.")
    dimension: int = Field(..., ge=1, description="Number of coefficients K.")
    points: tuple[int, ...] = Field(..., description="Evaluation points as integers of GF(q^N).")

    @model_validator(mode="after")
    def check_shape(self) -> "GabidulinCode":
        if self.dimension > self.length:
            raise ValueError(f"Dimension K={self.dimension} exceeds length N={self.length}")
        if len(self.points) != self.length:
            raise ValueError(f"Expected {self.length} points, got {len(self.points)}")
        return self

    @property
    def q(self) -> int:
        return self.base.order

    def point_array(self) -> FieldArray:
        return self.field.galois_field()(list(self.points))
