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
The (4, 2, 3) flexible MSR code over GF(4) with 2-symbol blocks.

Built on a (4, 2) vector MSR code with 4 x 8 parity check H = [h_{u,i}]. Layer 1
rows use [h_{1,i}; h_{2,i}] for every node; the layer 2 row scales h_{2,1} and
h_{2,2} by beta, a primitive element of GF(4).
"""

from coreason_flexcode.field import canonical_field
from coreason_flexcode.layered import CodeFamily, FlexProfile
from coreason_flexcode.msr.codec import FlexMsrCode
from coreason_flexcode.msr.models import RepairMatrices

FOUR_NODE_MSR_PROFILE = FlexProfile.from_pairs(4, [(3, 2), (2, 3)], family=CodeFamily.MSR)

PARITY_CHECK = [
    [0, 1, 1, 0, 1, 0, 0, 0],
    [1, 1, 1, 1, 0, 1, 0, 0],
    [0, 1, 1, 1, 0, 0, 1, 0],
    [1, 0, 1, 0, 0, 0, 0, 1],
]

SELECTORS = [
    [[1, 0, 0, 0], [0, 0, 0, 1]],
    [[1, 0, 0, 0], [0, 0, 1, 0]],
    [[1, 0, 1, 0], [0, 1, 1, 0]],
    [[0, 1, 1, 0], [0, 0, 0, 1]],
]

BETA = 2


def four_node_msr_code() -> FlexMsrCode:
    """Regression fixture with literal parity checks and repair matrices."""
    spec = canonical_field(2, 2)
    gf = spec.galois_field()
    h = gf(PARITY_CHECK)
    node_blocks = [[h[0:2, 2 * i : 2 * i + 2], h[2:4, 2 * i : 2 * i + 2]] for i in range(4)]
    selectors = RepairMatrices(matrices=tuple(gf(s) for s in SELECTORS))
    return FlexMsrCode(
        FOUR_NODE_MSR_PROFILE,
        spec,
        node_blocks,
        lambda j, x, i: BETA if j == 2 and i < 2 else 1,
        selectors,
    )
