# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Property audit of flexible MSR codes."""

from itertools import combinations

import numpy as np

from coreason_flexcode.field import embed
from coreason_flexcode.linalg import hstack, matrix_rank
from coreason_flexcode.msr.codec import FlexMsrCode
from coreason_flexcode.msr.models import AuditReport
from coreason_flexcode.utils.logger import logger


def _rows(code: FlexMsrCode) -> list[tuple[int, int]]:
    return [(g.index, x) for g in code.plan.layers for x in range(1, g.row_count + 1)]


def condition_one_violations(code: FlexMsrCode) -> list[str]:
    """Rows in which two columns of the same node carry the same coefficient."""
    violations = []
    for j, x in _rows(code):
        seen: dict[tuple[int, int], tuple[int, int, int]] = {}
        for slot in code.row_slots(j, x):
            key = (slot[2], code.coefficient(*slot))
            if key in seen:
                violations.append(f"Row ({j},{x}): node {slot[2] + 1} repeats coefficient {key[1]}")
            seen[key] = slot
    return violations


def vandermonde_violations(code: FlexMsrCode) -> list[str] | None:
    """
    Diagonal z of every row must see pairwise distinct beta * lambda_{i, digit_i(z)}.

    Returns None when the code was not built from diagonal parity checks.
    """
    spec = code.spec
    if spec is None:
        return None
    field = code.field
    lambdas = embed(spec.base.galois_field()(np.array(spec.lambdas)), spec.base, spec.ambient)
    violations = []
    for j, x in _rows(code):
        slots = code.row_slots(j, x)
        betas = field([code.coefficient(*slot) for slot in slots])
        nodes = [slot[2] for slot in slots]
        for z in range(spec.sub_packetization):
            values = betas * field([int(lambdas[i][spec.digit(i, z)]) for i in nodes])
            if np.unique(np.asarray(values)).size != len(slots):
                violations.append(f"Row ({j},{x}) diagonal {z}: repeated beta*lambda")
                break
    return violations


def erasure_violations(code: FlexMsrCode) -> list[str]:
    """Every choice of r erased columns must leave an invertible rL x rL system."""
    violations = []
    full = code.r * code.block_size
    for j, x in _rows(code):
        columns = code.row_columns(j, x)
        for erased in combinations(range(len(columns)), code.r):
            if matrix_rank(hstack([columns[p] for p in erased])) != full:
                violations.append(f"Row ({j},{x}): columns {[p + 1 for p in erased]} are not recoverable")
    return violations


def rank_violations(code: FlexMsrCode) -> list[str]:
    """rank(S_* h_i) must be L when i = * and L/r otherwise, for every stored column."""
    violations = []
    size = code.block_size
    for j, x in _rows(code):
        for failed in range(code.profile.n):
            select = code.repair_matrices[failed]
            for i in range(code.profile.n):
                wanted = size if i == failed else size // code.r
                rank = matrix_rank(select @ code.column(j, x, i))
                if rank != wanted:
                    violations.append(f"Row ({j},{x}) S_{failed + 1} h_{i + 1}: rank {rank}, expected {wanted}")
    return violations


def audit_msr(code: FlexMsrCode) -> AuditReport:
    """Check the MDS property two ways, the repair rank condition and coefficient distinctness."""
    vandermonde = vandermonde_violations(code)
    erasure = erasure_violations(code)
    rank = rank_violations(code)
    condition = condition_one_violations(code)
    report = AuditReport(
        mds_vandermonde=None if vandermonde is None else not vandermonde,
        mds_exhaustive=not erasure,
        rank_condition=not rank,
        condition_one=not condition,
        violations=tuple((vandermonde or []) + erasure + rank + condition),
    )
    logger.info(f"MSR audit {'passed' if report.passed else 'failed'} with {len(report.violations)} violations")
    return report
