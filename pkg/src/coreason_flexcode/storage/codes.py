# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Family dispatch from a profile config to a concrete flexible code."""

from collections.abc import Sequence
from itertools import combinations
from typing import Protocol

from galois import FieldArray

from coreason_flexcode.exceptions import ProfileError
from coreason_flexcode.field import FieldSpec, rank_over_base
from coreason_flexcode.layered import CodeFamily, CodewordArray, FlexProfile
from coreason_flexcode.linalg import matrix_rank
from coreason_flexcode.lrc import FlexLrcCode, check_locality
from coreason_flexcode.mds import FOUR_NODE_PROFILE, FlexMdsCode, SystematicRowCode, four_node_reference_code
from coreason_flexcode.msr import FOUR_NODE_MSR_PROFILE, FlexMsrCode, audit_msr, build_msr_code, four_node_msr_code
from coreason_flexcode.pmds import FlexPmdsCode
from coreason_flexcode.storage.models import AuditSummary, Construction, ProfileConfig
from coreason_flexcode.utils.logger import logger


class StorageCode(Protocol):
    """What the shard pipeline needs from a flexible code."""

    field_spec: FieldSpec
    block_size: int

    @property
    def profile(self) -> FlexProfile: ...

    @property
    def info_length(self) -> int: ...

    def encode(self, info: FieldArray) -> CodewordArray: ...

    def decode_nodes(self, cols: Sequence[int], rows: FieldArray, j: int) -> FieldArray: ...


def build_code(config: ProfileConfig) -> StorageCode:
    """
    Build the code a profile config describes.

    Raises:
        ProfileError: If the reference construction is requested for another profile or family.
    """
    profile = config.to_profile()
    family = config.family
    if config.construction is Construction.REFERENCE:
        if family is CodeFamily.MDS and profile == FOUR_NODE_PROFILE:
            return four_node_reference_code()
        if family is CodeFamily.MSR and profile == FOUR_NODE_MSR_PROFILE:
            return four_node_msr_code()
        raise ProfileError("The reference construction exists only for the four-node MDS and MSR profiles")
    if family is CodeFamily.MDS:
        return FlexMdsCode(profile, field=config.field)
    if family is CodeFamily.LRC:
        return FlexLrcCode(profile, field=config.field)
    if family is CodeFamily.PMDS:
        return FlexPmdsCode(profile, base=config.field)
    return build_msr_code(profile, config.coefficient_strategy)


def _row_mds_violations(code: FlexMdsCode) -> list[str]:
    violations = []
    for geometry in code.plan.layers:
        row = code.row_code(geometry.index)
        if not isinstance(row, SystematicRowCode):  # pragma: no cover
            continue
        for subset in combinations(range(row.length), row.dimension):
            if matrix_rank(row.generator[:, list(subset)]) != row.dimension:
                violations.append(f"Layer {geometry.index}: positions {[p + 1 for p in subset]} are dependent")
    return violations


def audit_code(code: StorageCode) -> AuditSummary:
    """Run the checks that apply to the code's family."""
    family = code.profile.family
    if isinstance(code, FlexMsrCode):
        report = audit_msr(code)
        summary = AuditSummary(
            family=family,
            checks={
                "mds_vandermonde": report.mds_vandermonde,
                "mds_exhaustive": report.mds_exhaustive,
                "rank_condition": report.rank_condition,
                "condition_one": report.condition_one,
            },
            violations=report.violations,
        )
    elif isinstance(code, FlexLrcCode):
        locality = check_locality(code.layout)
        summary = AuditSummary(
            family=family,
            checks={"constant_on_groups": locality.constant_on_groups, "disjoint_groups": locality.disjoint},
        )
    elif isinstance(code, FlexPmdsCode):
        gabidulin = code.gabidulin
        rank = rank_over_base(gabidulin.point_array(), gabidulin.base)
        summary = AuditSummary(
            family=family,
            checks={"points_independent": rank == gabidulin.length},
            violations=() if rank == gabidulin.length else (f"Outer points span {rank} of {gabidulin.length}",),
        )
    elif isinstance(code, FlexMdsCode):
        violations = _row_mds_violations(code)
        summary = AuditSummary(family=family, checks={"row_mds": not violations}, violations=tuple(violations))
    else:  # pragma: no cover
        raise ProfileError(f"No audit for {type(code).__name__}")
    logger.info(f"Audit of {family.value} code {'passed' if summary.passed else 'failed'}")
    return summary
