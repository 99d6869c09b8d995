# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Flexible partial-MDS codes with a Gabidulin outer code."""

from coreason_flexcode.pmds.codec import (
    FlexPmdsCode,
    build_gabidulin,
    build_pmds_code,
    check_erasure_budget,
    flex_pmds_decode,
    flex_pmds_encode,
    gabidulin_encode,
    gabidulin_erasure_decode,
    outer_length,
    pmds_base_field,
)
from coreason_flexcode.pmds.models import GabidulinCode

__all__ = [
    "FlexPmdsCode",
    "GabidulinCode",
    "build_gabidulin",
    "build_pmds_code",
    "check_erasure_budget",
    "flex_pmds_decode",
    "flex_pmds_encode",
    "gabidulin_encode",
    "gabidulin_erasure_decode",
    "outer_length",
    "pmds_base_field",
]
