# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Flexible minimum-storage regenerating codes."""

from coreason_flexcode.msr.audit import (
    audit_msr,
    condition_one_violations,
    erasure_violations,
    rank_violations,
    vandermonde_violations,
)
from coreason_flexcode.msr.codec import (
    FlexMsrCode,
    ParityCheckRowCode,
    msr_decode,
    msr_encode,
    msr_repair,
    naive_repair_bandwidth,
)
from coreason_flexcode.msr.construction import (
    assign_coefficients,
    build_msr_code,
    build_yebarg,
    check_msr_caps,
    choose_msr_fields,
    repair_selector,
    required_coefficients,
)
from coreason_flexcode.msr.models import (
    AuditReport,
    CoefficientStrategy,
    CoefficientTable,
    RepairMatrices,
    RepairReport,
    YeBargSpec,
)
from coreason_flexcode.msr.reference import FOUR_NODE_MSR_PROFILE, four_node_msr_code

__all__ = [
    "FOUR_NODE_MSR_PROFILE",
    "AuditReport",
    "CoefficientStrategy",
    "CoefficientTable",
    "FlexMsrCode",
    "ParityCheckRowCode",
    "RepairMatrices",
    "RepairReport",
    "YeBargSpec",
    "assign_coefficients",
    "audit_msr",
    "build_msr_code",
    "build_yebarg",
    "check_msr_caps",
    "choose_msr_fields",
    "condition_one_violations",
    "erasure_violations",
    "four_node_msr_code",
    "msr_decode",
    "msr_encode",
    "msr_repair",
    "naive_repair_bandwidth",
    "rank_violations",
    "repair_selector",
    "required_coefficients",
    "vandermonde_violations",
]
