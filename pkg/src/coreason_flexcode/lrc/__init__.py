# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Flexible locally recoverable codes."""

from coreason_flexcode.lrc.codec import (
    FlexLrcCode,
    LrcRowCode,
    build_layout,
    build_lrc_code,
    check_locality,
    flex_lrc_decode,
    lagrange_weights,
    local_repair,
    lrc_encode_row,
    lrc_field_for,
    lrc_row_points,
)
from coreason_flexcode.lrc.models import LocalityReport, LrcLayout

__all__ = [
    "FlexLrcCode",
    "LocalityReport",
    "LrcLayout",
    "LrcRowCode",
    "build_layout",
    "build_lrc_code",
    "check_locality",
    "flex_lrc_decode",
    "lagrange_weights",
    "local_repair",
    "lrc_encode_row",
    "lrc_field_for",
    "lrc_row_points",
]
