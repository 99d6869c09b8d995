# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Layered construction shared by every flexible code family."""

from coreason_flexcode.layered.codec import (
    CodecFactory,
    RowCodec,
    codeword_rows_equal,
    layered_decode,
    layered_encode,
)
from coreason_flexcode.layered.models import (
    CodeFamily,
    CodewordArray,
    ExtraParityRef,
    FlexProfile,
    LayerGeometry,
    LayerPlan,
    LayerSpec,
)
from coreason_flexcode.layered.plan import (
    build_references,
    counting_identity_holds,
    expected_recovery,
    extra_parity_target,
    validate_profile,
)

__all__ = [
    "CodeFamily",
    "CodecFactory",
    "CodewordArray",
    "ExtraParityRef",
    "FlexProfile",
    "LayerGeometry",
    "LayerPlan",
    "LayerSpec",
    "RowCodec",
    "build_references",
    "codeword_rows_equal",
    "counting_identity_holds",
    "expected_recovery",
    "extra_parity_target",
    "layered_decode",
    "layered_encode",
    "validate_profile",
]
