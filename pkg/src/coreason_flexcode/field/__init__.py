# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Finite fields: descriptors, checked arithmetic, Frobenius maps and coset partitions."""

from coreason_flexcode.field.arithmetic import (
    as_field_vector,
    canonical_field,
    coset_reps,
    embed,
    ff_arith,
    frobenius,
    in_subgroup,
    rank_over_base,
    smallest_field,
    subfield_basis_images,
)
from coreason_flexcode.field.models import CosetPartition, FieldSpec

__all__ = [
    "CosetPartition",
    "FieldSpec",
    "as_field_vector",
    "canonical_field",
    "coset_reps",
    "embed",
    "ff_arith",
    "frobenius",
    "in_subgroup",
    "rank_over_base",
    "smallest_field",
    "subfield_basis_images",
]
