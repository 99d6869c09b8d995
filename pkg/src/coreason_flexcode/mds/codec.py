# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Flexible MDS codes with systematic Reed-Solomon rows."""

from collections.abc import Sequence
from functools import lru_cache

import numpy as np
from galois import FieldArray

from coreason_flexcode.exceptions import FieldTooSmallError, IndexRangeError, ProfileError
from coreason_flexcode.field import FieldSpec, smallest_field
from coreason_flexcode.layered import (
    CodecFactory,
    CodeFamily,
    CodewordArray,
    FlexProfile,
    LayerPlan,
    RowCodec,
    layered_decode,
    layered_encode,
    validate_profile,
)
from coreason_flexcode.linalg import solve_linear, vandermonde
from coreason_flexcode.utils.logger import logger


class SystematicRowCode:
    """
    Systematic linear row code with generator G = [I | P].

    Information occupies the first ``dimension`` positions verbatim.
    """

    def __init__(self, parity: FieldArray) -> None:
        field = type(parity)
        k = parity.shape[0]
        self.generator = field.Zeros((k, k + parity.shape[1]))
        self.generator[:, :k] = field.Identity(k)
        self.generator[:, k:] = parity

    @property
    def length(self) -> int:
        return int(self.generator.shape[1])

    @property
    def dimension(self) -> int:
        return int(self.generator.shape[0])

    def encode(self, info: FieldArray) -> FieldArray:
        if info.shape[0] != self.dimension:
            raise IndexRangeError(f"Row code expects {self.dimension} information symbols, got {info.shape[0]}")
        return self.generator.T @ info

    def decode(self, positions: Sequence[int], symbols: FieldArray) -> FieldArray:
        if any(not 0 <= p < self.length for p in positions):
            raise IndexRangeError(f"Positions must lie in 0..{self.length - 1}")
        return solve_linear(self.generator[:, list(positions)].T, symbols)


class RsRowCode(SystematicRowCode):
    """Systematic Reed-Solomon row: evaluations at distinct points, information on the first k points."""

    def __init__(self, points: FieldArray, dimension: int) -> None:
        if dimension > points.size:
            raise IndexRangeError(f"Dimension {dimension} exceeds length {points.size}")
        v = vandermonde(points, dimension)
        systematic = solve_linear(v[:, :dimension], v)
        super().__init__(systematic[:, dimension:])
        self.points = points


def rs_points(field: type[FieldArray], count: int) -> FieldArray:
    """Evaluation points 0, 1, alpha, alpha^2, ... in a fixed order."""
    if count > field.order:
        raise FieldTooSmallError(f"{field.name} has only {field.order} evaluation points, {count} needed")
    points = field.Zeros(count)
    if count > 1:
        points[1:] = field.primitive_element ** np.arange(count - 1)
    return points


def rs_encode_row(info_row: FieldArray, code: SystematicRowCode) -> FieldArray:
    """Encode one row; the output is (length,) or (length, w) to match the input."""
    blocks = info_row.reshape(-1, 1) if info_row.ndim == 1 else info_row
    codeword = code.encode(blocks)
    return codeword[:, 0] if info_row.ndim == 1 else codeword


def mds_field_for(profile: FlexProfile) -> FieldSpec:
    """Smallest field with n + k_1 - k_a distinct evaluation points."""
    return smallest_field(profile.n + profile.layers[0].dimension - profile.k)


class FlexMdsCode:
    """Flexible MDS code: the layered construction with one RS code per layer."""

    def __init__(
        self,
        profile: FlexProfile,
        field: FieldSpec | None = None,
        factory: CodecFactory | None = None,
    ) -> None:
        if profile.family is not CodeFamily.MDS:
            raise ProfileError(f"Expected an MDS profile, got {profile.family.value}")
        self.logger = logger.bind(agent="FlexMdsCode")
        self.plan: LayerPlan = validate_profile(profile)
        self.field_spec = field or mds_field_for(profile)
        self.field = self.field_spec.galois_field()
        self.block_size = 1
        if factory is None:
            points = rs_points(self.field, profile.n + profile.layers[0].dimension - profile.k)
            codes = [RsRowCode(points[: g.inner_length], g.dimension) for g in self.plan.layers]
            self.factory: CodecFactory = lambda j, x: codes[j - 1]
        else:
            self.factory = factory
        self.logger.debug(f"Flexible MDS code over {self.field_spec.label} with {profile.depth} layers")

    @property
    def profile(self) -> FlexProfile:
        return self.plan.profile

    @property
    def info_length(self) -> int:
        return self.profile.info_symbols

    def row_code(self, j: int, x: int = 1) -> RowCodec:
        return self.factory(j, x)

    def encode(self, info: FieldArray) -> CodewordArray:
        return layered_encode(info, self.plan, self.factory)

    def decode(self, cols: Sequence[int], rows: FieldArray, j: int) -> FieldArray:
        """Information (k*l,) from the first l_j rows of R_j nodes."""
        return layered_decode(cols, rows, j, self.plan, self.factory)[:, 0]

    def decode_nodes(self, cols: Sequence[int], rows: FieldArray, j: int) -> FieldArray:
        """Uniform entry point used by the storage pipeline; returns (k*l, 1)."""
        return layered_decode(cols, rows, j, self.plan, self.factory)


@lru_cache(maxsize=32)
def build_mds_code(profile: FlexProfile) -> FlexMdsCode:
    """Cached standard flexible MDS code for a profile."""
    return FlexMdsCode(profile)


def flex_mds_encode(info: FieldArray, profile: FlexProfile) -> CodewordArray:
    """Encode k*l symbols with the standard flexible MDS code of ``profile``."""
    return build_mds_code(profile).encode(info)


def flex_mds_decode(cols: Sequence[int], rows: FieldArray, j: int, profile: FlexProfile) -> FieldArray:
    """Decode with the standard flexible MDS code of ``profile``."""
    return build_mds_code(profile).decode(cols, rows, j)
