# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Diagonal-matrix MSR parity checks, repair matrices and coefficient assignment."""

import math
from functools import lru_cache

import numpy as np
from galois import FieldArray

from coreason_flexcode.config import FlexConfig
from coreason_flexcode.exceptions import (
    CoefficientError,
    FieldTooSmallError,
    ParameterCapError,
    ProfileDivisibilityError,
)
from coreason_flexcode.field import FieldSpec, canonical_field, coset_reps, embed, smallest_field
from coreason_flexcode.layered import FlexProfile
from coreason_flexcode.msr.codec import FlexMsrCode
from coreason_flexcode.msr.models import CoefficientStrategy, CoefficientTable, RepairMatrices, YeBargSpec
from coreason_flexcode.utils.logger import logger


def required_coefficients(profile: FlexProfile, strategy: CoefficientStrategy) -> int:
    """
    Number of distinct coefficients a strategy consumes.

    Per-row uses one per row. Per-layer uses 1 + sum_{j>=2} ceil((k_{j-1} - k_j) / k_j).
    """
    if strategy is CoefficientStrategy.PER_ROW:
        return profile.sub_packetization
    dims = [layer.dimension for layer in profile.layers]
    return 1 + sum(math.ceil((dims[j - 1] - dims[j]) / dims[j]) for j in range(1, len(dims)))


def check_msr_caps(n: int, k: int) -> None:
    """
    Raises:
        ProfileDivisibilityError: If n <= k.
        ParameterCapError: If n or r = n - k exceeds the supported sizes.
    """
    if n <= k:
        raise ProfileDivisibilityError(f"MSR codes need n > k, got n={n}, k={k}")
    if n > FlexConfig.MSR_MAX_NODES or n - k > FlexConfig.MSR_MAX_PARITY:
        raise ParameterCapError(
            f"MSR codes are limited to n <= {FlexConfig.MSR_MAX_NODES} and r <= {FlexConfig.MSR_MAX_PARITY}, "
            f"got n={n}, r={n - k}"
        )


def choose_msr_fields(n: int, k: int, coefficient_count: int = 1) -> tuple[FieldSpec, FieldSpec]:
    """
    Smallest binary E with |E| > r n and smallest extension F of E with enough cosets of E*.

    Raises:
        FieldTooSmallError: If no binary extension below the search limit qualifies.
    """
    check_msr_caps(n, k)
    r = n - k
    base = smallest_field(r * n + 1, characteristic=2)
    d = base.degree
    for m in range(1, 64 // d + 1):
        order = 2 ** (d * m)
        if (order - 1) // (base.order - 1) >= coefficient_count:
            ambient = base if m == 1 else canonical_field(2, d * m, subfield=base)
            logger.debug(f"MSR fields: E={base.label}, F={ambient.label} for {coefficient_count} coefficients")
            return base, ambient
    raise FieldTooSmallError(  # pragma: no cover
        f"No binary extension of {base.label} offers {coefficient_count} cosets"
    )


def repair_selector(r: int, n: int, node: int, field: type[FieldArray]) -> FieldArray:
    """
    D_*: (L/r) x L with D[x, y] = 1 iff x is y with base-r digit ``node`` deleted.

    Each column holds a single 1 and each row r of them.
    """
    size = r**n
    low = r**node
    selector = field.Zeros((size // r, size))
    for y in range(size):
        selector[(y // (low * r)) * low + y % low, y] = 1
    return selector


def build_yebarg(
    n: int,
    k: int,
    base: FieldSpec,
    ambient: FieldSpec,
    coefficient_count: int = 1,
) -> tuple[YeBargSpec, tuple[FieldArray, ...], RepairMatrices]:
    """
    Diagonal parity-check matrices A_1..A_n and repair matrices S_1..S_n.

    Args:
        n: Nodes.
        k: Dimension k_a; r = n - k.
        base: Field E with more than r n elements.
        ambient: Extension F of E carrying the code.
        coefficient_count: Coset representatives to reserve.

    Returns:
        The spec, the A_i over F (each L x L) and the S_i over F (each L x rL).

    Raises:
        FieldTooSmallError: If |E| <= r n or F lacks the requested cosets.
        ParameterCapError: If n or r exceeds the supported sizes.
    """
    check_msr_caps(n, k)
    r = n - k
    if base.order <= r * n:
        raise FieldTooSmallError(f"{base.label} has fewer than {r * n} distinct nonzero elements")
    e_field = base.galois_field()
    gamma = e_field.primitive_element
    values = gamma ** np.arange(r * n)
    lambdas = tuple(tuple(int(values[i * r + z]) for z in range(r)) for i in range(n))
    spec = YeBargSpec(
        n=n,
        k=k,
        base=base,
        ambient=ambient,
        lambdas=lambdas,
        cosets=coset_reps(ambient, base, coefficient_count),
    )

    f_field = ambient.galois_field()
    embedded = embed(e_field(np.array(lambdas)), base, ambient)
    size = spec.sub_packetization
    digits = np.arange(size)
    a_matrices = []
    for i in range(n):
        diagonal = embedded[i][(digits // r**i) % r]
        a_matrices.append(f_field(np.diag(np.asarray(diagonal))))

    selectors = []
    for node in range(n):
        d = repair_selector(r, n, node, f_field)
        s = f_field.Zeros((size, r * size))
        for b in range(r):
            s[b * (size // r) : (b + 1) * (size // r), b * size : (b + 1) * size] = d
        selectors.append(s)
    logger.debug(f"Built diagonal MSR checks n={n}, k={k}, L={size} over {ambient.label}")
    return spec, tuple(a_matrices), RepairMatrices(matrices=tuple(selectors))


def assign_coefficients(
    profile: FlexProfile,
    spec: YeBargSpec,
    strategy: CoefficientStrategy = CoefficientStrategy.PER_LAYER,
) -> CoefficientTable:
    """
    Assign a coset representative to every (layer, row).

    Per-row gives every row its own representative. Per-layer gives layer 1 the
    first one and rows x of layer j >= 2 the ((x-1) mod m_j)-th of a block of
    m_j = ceil((k_{j-1} - k_j) / k_j) fresh ones, which keeps the coefficients that
    one row's extras copy from a single target layer distinct.

    Raises:
        CoefficientError: If the construction reserved too few representatives.
    """
    needed = required_coefficients(profile, strategy)
    reps = spec.cosets.reps
    if needed > len(reps):
        raise CoefficientError(f"{strategy.value} assignment needs {needed} coefficients, {len(reps)} available")
    assignment: list[tuple[int, ...]] = []
    previous_rows = 0
    offset = 1
    for j, layer in enumerate(profile.layers, start=1):
        count = layer.rows - previous_rows
        if strategy is CoefficientStrategy.PER_ROW:
            assignment.append(tuple(range(previous_rows, layer.rows)))
        elif j == 1:
            assignment.append((0,) * count)
        else:
            k_prev, k_j = profile.layers[j - 2].dimension, layer.dimension
            block = math.ceil((k_prev - k_j) / k_j)
            assignment.append(tuple(offset + (x % block) for x in range(count)))
            offset += block
        previous_rows = layer.rows
    return CoefficientTable(strategy=strategy, reps=reps[:needed], assignment=tuple(assignment))


@lru_cache(maxsize=16)
def build_msr_code(
    profile: FlexProfile,
    strategy: CoefficientStrategy = CoefficientStrategy.PER_LAYER,
) -> FlexMsrCode:
    """Flexible MSR code on diagonal parity checks over the smallest suitable fields."""
    needed = required_coefficients(profile, strategy)
    base, ambient = choose_msr_fields(profile.n, profile.k, needed)
    spec, a_matrices, selectors = build_yebarg(profile.n, profile.k, base, ambient, needed)
    table = assign_coefficients(profile, spec, strategy)
    r = spec.r
    node_blocks = []
    for a in a_matrices:
        powers = [ambient.galois_field().Identity(a.shape[0])]
        for _ in range(1, r):
            powers.append(powers[-1] @ a)
        node_blocks.append(powers)
    return FlexMsrCode(
        profile,
        ambient,
        node_blocks,
        lambda j, x, i: table.value(j, x),
        selectors,
        spec=spec,
        coefficients=table,
    )
