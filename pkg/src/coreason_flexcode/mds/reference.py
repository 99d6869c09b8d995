# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""
The (4, 2, 3) flexible MDS code over GF(5) with single-parity upper rows.

Layer 1 rows store (C1, C2, C3, W) with W = C1 + C2 + C3 and carry the extra parity
W' = C1 + 2 C2 + 3 C3. The layer 2 row stores (W'1, W'2, W'1 + W'2, W'1 + 2 W'2).
"""

from coreason_flexcode.field import canonical_field
from coreason_flexcode.layered import FlexProfile
from coreason_flexcode.mds.codec import FlexMdsCode, SystematicRowCode

FOUR_NODE_PROFILE = FlexProfile.from_pairs(4, [(3, 2), (2, 3)])


def four_node_reference_code() -> FlexMdsCode:
    """Regression fixture for the four-node, two-layer MDS layout."""
    spec = canonical_field(5)
    gf = spec.galois_field()
    upper = SystematicRowCode(gf([[1, 1], [1, 2], [1, 3]]))
    lower = SystematicRowCode(gf([[1, 1], [1, 2]]))
    return FlexMdsCode(FOUR_NODE_PROFILE, field=spec, factory=lambda j, x: upper if j == 1 else lower)
