# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Flexible MDS codes."""

from coreason_flexcode.mds.codec import (
    FlexMdsCode,
    RsRowCode,
    SystematicRowCode,
    build_mds_code,
    flex_mds_decode,
    flex_mds_encode,
    mds_field_for,
    rs_encode_row,
    rs_points,
)
from coreason_flexcode.mds.reference import FOUR_NODE_PROFILE, four_node_reference_code

__all__ = [
    "FOUR_NODE_PROFILE",
    "FlexMdsCode",
    "RsRowCode",
    "SystematicRowCode",
    "build_mds_code",
    "flex_mds_decode",
    "flex_mds_encode",
    "four_node_reference_code",
    "mds_field_for",
    "rs_encode_row",
    "rs_points",
]
