# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Pydantic models describing finite fields and coset partitions."""

from functools import lru_cache

import galois
from galois import FieldArray
from pydantic import BaseModel, ConfigDict, Field, model_validator

from coreason_flexcode.config import FlexConfig


@lru_cache(maxsize=None)
def _galois_field(characteristic: int, modulus: tuple[int, ...]) -> type[FieldArray]:
    degree = len(modulus) - 1
    order = characteristic**degree
    if degree == 1:
        field = galois.GF(characteristic)
    else:
        poly = galois.Poly(list(modulus), field=galois.GF(characteristic))
        field = galois.GF(order, irreducible_poly=poly)
    # Fields whose products overflow int64 use object arrays and only offer python-calculate
    mode = "jit-lookup" if order <= FlexConfig.TABLE_FIELD_LIMIT else "jit-calculate"
    if mode not in field.ufunc_modes:
        mode = "python-calculate"
    field.compile(mode)
    return field


class FieldSpec(BaseModel):
    """
    Prime-power field GF(p^m) in polynomial basis.

    The modulus is recorded explicitly so encoded shards stay portable. Prime
    fields use the modulus ``x``.
    """

    model_config = ConfigDict(frozen=True)

    characteristic: int = Field(..., ge=2, description="Prime characteristic p.")
    degree: int = Field(..., ge=1, description="Extension degree over GF(p).")
    modulus: tuple[int, ...] = Field(
        ..., description="Irreducible modulus over GF(p), highest-degree coefficient first."
    )
    subfield: "FieldSpec | None" = Field(default=None, description="Declared subfield this field extends.")

    @model_validator(mode="after")
    def check_modulus(self) -> "FieldSpec":
        """Validate primality, modulus shape, irreducibility and the subfield degree."""
        p = self.characteristic
        if not galois.is_prime(p):
            raise ValueError(f"Characteristic {p} is not prime")
        if len(self.modulus) != self.degree + 1 or self.modulus[0] != 1:
            raise ValueError(f"Modulus must be monic of degree {self.degree}")
        if any(not 0 <= c < p for c in self.modulus):
            raise ValueError(f"Modulus coefficients must lie in [0, {p})")
        if self.degree > 1 and not galois.Poly(list(self.modulus), field=galois.GF(p)).is_irreducible():
            raise ValueError(f"Modulus {self.modulus} is reducible over GF({p})")
        if self.subfield is not None:
            if self.subfield.characteristic != p or self.degree % self.subfield.degree:
                raise ValueError(f"{self.subfield.label} cannot be a subfield of {self.label}")
        return self

    @property
    def order(self) -> int:
        return int(self.characteristic**self.degree)

    @property
    def label(self) -> str:
        if self.degree == 1:
            return f"GF({self.characteristic})"
        return f"GF({self.characteristic}^{self.degree})"

    @property
    def symbol_width(self) -> int:
        """Bytes per stored symbol: ceil(log2 |F| / 8)."""
        return ((self.order - 1).bit_length() + 7) // 8

    @property
    def bits_per_symbol(self) -> int:
        """Payload bits packed into one symbol: floor(log2 |F|)."""
        return self.order.bit_length() - 1

    def galois_field(self) -> type[FieldArray]:
        """Return the (cached) galois array class implementing this field."""
        return _galois_field(self.characteristic, self.modulus)


class CosetPartition(BaseModel):
    """Representatives of distinct cosets of E* inside F*."""

    model_config = ConfigDict(frozen=True)

    ambient: FieldSpec = Field(..., description="Ambient field F.")
    base: FieldSpec = Field(..., description="Subfield E.")
    reps: tuple[int, ...] = Field(..., description="Integer encodings of beta_1..beta_count in F.")
    available: int = Field(..., ge=1, description="Total number of cosets |F*| / |E*|.")

    def elements(self) -> FieldArray:
        """Representatives as elements of F."""
        return self.ambient.galois_field()(list(self.reps))
