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
Flexible partial-MDS codes.

A Gabidulin codeword over GF(q^N) supplies the information symbols of every row:
layer j rows take k_j consecutive coordinates each and append the parities of a
systematic (n, k_j) MDS code over GF(q). Any stored symbol is therefore the
linearized polynomial evaluated at a GF(q)-combination of the outer points.
"""

from collections.abc import Sequence
from functools import lru_cache

import galois
import numpy as np
from galois import FieldArray

from coreason_flexcode.exceptions import (
    ErasureBudgetError,
    FieldTooSmallError,
    IndexRangeError,
    ProfileError,
    RankDeficiencyError,
)
from coreason_flexcode.field import FieldSpec, canonical_field, embed, rank_over_base, smallest_field
from coreason_flexcode.layered import CodeFamily, CodewordArray, FlexProfile, LayerPlan, validate_profile
from coreason_flexcode.linalg import moore_matrix, solve_linear
from coreason_flexcode.mds import RsRowCode, rs_points
from coreason_flexcode.pmds.models import GabidulinCode
from coreason_flexcode.utils.logger import logger


def pmds_base_field(profile: FlexProfile) -> FieldSpec:
    """Smallest prime q >= n, so that every (n, k_j) Reed-Solomon row code exists over GF(q)."""
    return smallest_field(profile.n, predicate=galois.is_prime)


def outer_length(profile: FlexProfile) -> int:
    """N = sum_j k_j (l_j - l_{j-1})."""
    previous = 0
    total = 0
    for layer in profile.layers:
        total += layer.dimension * (layer.rows - previous)
        previous = layer.rows
    return total


def build_gabidulin(base: FieldSpec, length: int, dimension: int) -> GabidulinCode:
    """
    Gabidulin code on the polynomial basis 1, theta, ..., theta^(N-1) of GF(q^N).

    Raises:
        FieldTooSmallError: If the basis is not independent over GF(q).
    """
    if base.degree != 1:
        raise FieldTooSmallError(f"Gabidulin base field must be prime, got {base.label}")
    ambient = canonical_field(base.characteristic, length, subfield=base) if length > 1 else base
    gf = ambient.galois_field()
    theta = gf(base.characteristic) if length > 1 else gf(1)
    points = theta ** np.arange(length)
    if rank_over_base(points, base) != length:  # pragma: no cover - the polynomial basis is independent
        raise FieldTooSmallError(f"Evaluation points are dependent over {base.label}")
    return GabidulinCode(
        base=base,
        field=ambient,
        length=length,
        dimension=dimension,
        points=tuple(int(x) for x in points),
    )


def gabidulin_encode(u: FieldArray, code: GabidulinCode) -> FieldArray:
    """Evaluations f(alpha_1), ..., f(alpha_N) of the linearized polynomial with coefficients ``u``."""
    if u.shape[0] != code.dimension:
        raise IndexRangeError(f"Expected {code.dimension} coefficients, got {u.shape[0]}")
    moore = moore_matrix(code.point_array(), code.dimension, code.q)
    return moore.T @ u


def gabidulin_erasure_decode(points: FieldArray, values: FieldArray, code: GabidulinCode) -> FieldArray:
    """
    Recover the K coefficients from evaluations at GF(q)-independent points.

    Raises:
        RankDeficiencyError: If the points span fewer than K dimensions over GF(q).
    """
    rank = rank_over_base(points, code.base) if points.size else 0
    if rank < code.dimension:
        raise RankDeficiencyError(f"Only {rank} independent evaluations survive, {code.dimension} needed")
    return solve_linear(moore_matrix(points, code.dimension, code.q).T, values)


def check_erasure_budget(erased: np.ndarray, node_budget: int, symbol_budget: int) -> tuple[list[int], int]:
    """
    Split an erasure pattern into node erasures and leftover symbol erasures.

    The ``node_budget`` columns with the most erasures count as failed nodes.

    Returns:
        The failed-node columns and the number of remaining symbol erasures.

    Raises:
        ErasureBudgetError: If the leftover exceeds ``symbol_budget``.
    """
    counts = erased.sum(axis=0)
    order = sorted(range(counts.size), key=lambda c: (-int(counts[c]), c))
    nodes = [c for c in order[:node_budget] if counts[c]]
    leftover = int(erased.sum()) - int(counts[nodes].sum()) if nodes else int(erased.sum())
    if leftover > symbol_budget:
        raise ErasureBudgetError(
            f"{leftover} symbol erasures beyond {node_budget} failed nodes exceed the budget s={symbol_budget}"
        )
    return sorted(nodes), leftover


class FlexPmdsCode:
    """Flexible PMDS code: Gabidulin coordinates wrapped row by row in GF(q) MDS codes."""

    def __init__(self, profile: FlexProfile, base: FieldSpec | None = None) -> None:
        if profile.family is not CodeFamily.PMDS:
            raise ProfileError(f"Expected a PMDS profile, got {profile.family.value}")
        self.logger = logger.bind(agent="FlexPmdsCode")
        self.plan: LayerPlan = validate_profile(profile)
        self.base = base or pmds_base_field(profile)
        n = profile.n
        length = outer_length(profile)
        self.gabidulin = build_gabidulin(self.base, length, profile.info_symbols - profile.symbol_erasures)
        self.field_spec = self.gabidulin.field
        self.field = self.field_spec.galois_field()
        self.block_size = 1
        small_points = rs_points(self.base.galois_field(), n)
        self.generators: list[FieldArray] = []
        for geometry in self.plan.layers:
            row_code = RsRowCode(small_points, geometry.dimension)
            self.generators.append(embed(row_code.generator, self.base, self.field_spec))
        self._points = [self._evaluation_points(row) for row in range(profile.sub_packetization)]
        self.logger.debug(
            f"Flexible PMDS code: Gabidulin N={length}, K={self.gabidulin.dimension} over {self.field_spec.label}"
        )

    @property
    def profile(self) -> FlexProfile:
        return self.plan.profile

    @property
    def info_length(self) -> int:
        return self.gabidulin.dimension

    def _rows(self, limit: int) -> list[tuple[int, int]]:
        """(layer, first outer coordinate) of the first ``limit`` rows."""
        out = []
        offset = 0
        for geometry in self.plan.layers:
            for _ in range(geometry.row_count):
                if len(out) == limit:
                    return out
                out.append((geometry.index, offset))
                offset += geometry.dimension
        return out

    def _evaluation_points(self, row: int) -> FieldArray:
        j, offset = self._rows(row + 1)[row]
        generator = self.generators[j - 1]
        alphas = self.gabidulin.point_array()[offset : offset + generator.shape[0]]
        return generator.T @ alphas

    def row_points(self, row: int) -> FieldArray:
        """GF(q)-combinations of outer points evaluated by the n stored symbols of ``row`` (0-based)."""
        if not 0 <= row < len(self._points):
            raise IndexRangeError(f"Row {row} outside 0..{len(self._points) - 1}")
        return self._points[row]

    def encode(self, info: FieldArray) -> CodewordArray:
        """Encode K = k*l - s symbols of GF(q^N) into the l x n array."""
        coords = gabidulin_encode(info.reshape(-1), self.gabidulin)
        profile = self.profile
        stored = self.field.Zeros((profile.sub_packetization, profile.n, 1))
        for row, (j, offset) in enumerate(self._rows(profile.sub_packetization)):
            generator = self.generators[j - 1]
            stored[row, :, 0] = generator.T @ coords[offset : offset + generator.shape[0]]
        self.logger.debug(f"Encoded {profile.sub_packetization} rows from {coords.size} outer coordinates")
        return CodewordArray(profile=profile, symbols=stored)

    def decode_erasures(self, rows: FieldArray, erased: np.ndarray, j: int) -> FieldArray:
        """
        Recover the K information symbols from the first l_j rows under an erasure pattern.

        Args:
            rows: Shape (l_j, n) or (l_j, n, 1); erased entries are ignored.
            erased: Boolean mask of shape (l_j, n).
            j: Layer whose row prefix is supplied.

        Raises:
            ErasureBudgetError: If the pattern exceeds n - k_j node plus s symbol erasures.
            RankDeficiencyError: If the surviving evaluations span fewer than K dimensions.
        """
        profile = self.profile
        if not 1 <= j <= profile.depth:
            raise IndexRangeError(f"Layer {j} outside 1..{profile.depth}")
        layer = profile.layers[j - 1]
        data = rows.reshape(rows.shape[0], rows.shape[1])
        mask = np.asarray(erased, dtype=bool)
        if data.shape != (layer.rows, profile.n) or mask.shape != data.shape:
            raise IndexRangeError(f"Expected the first {layer.rows} rows of {profile.n} nodes")
        nodes, leftover = check_erasure_budget(mask, profile.n - layer.dimension, profile.symbol_erasures)
        self.logger.debug(f"Erasure pattern: failed nodes {nodes}, {leftover} extra symbol erasures")

        points = []
        values = []
        for row, (jj, _) in enumerate(self._rows(layer.rows)):
            alive = np.flatnonzero(~mask[row])[: profile.layers[jj - 1].dimension]
            row_points = self.row_points(row)
            points.extend(int(row_points[p]) for p in alive)
            values.extend(int(data[row, p]) for p in alive)
        return gabidulin_erasure_decode(self.field(points), self.field(values), self.gabidulin)

    def decode_nodes(self, cols: Sequence[int], rows: FieldArray, j: int) -> FieldArray:
        """Decode from whole nodes; returns (K, 1)."""
        profile = self.profile
        layer = profile.layers[j - 1]
        full = self.field.Zeros((layer.rows, profile.n))
        mask = np.ones((layer.rows, profile.n), dtype=bool)
        data = rows.reshape(rows.shape[0], rows.shape[1])
        for i, c in enumerate(cols):
            full[:, c] = data[: layer.rows, i]
            mask[:, c] = False
        return self.decode_erasures(full, mask, j).reshape(-1, 1)


@lru_cache(maxsize=16)
def build_pmds_code(profile: FlexProfile) -> FlexPmdsCode:
    return FlexPmdsCode(profile)


def flex_pmds_encode(info: FieldArray, profile: FlexProfile) -> CodewordArray:
    """Encode k*l - s symbols with the flexible PMDS code of ``profile``."""
    return build_pmds_code(profile).encode(info)


def flex_pmds_decode(rows: FieldArray, erased: np.ndarray, j: int, profile: FlexProfile) -> FieldArray:
    """Decode from the first l_j rows of all nodes, ``erased`` marking lost symbols."""
    return build_pmds_code(profile).decode_erasures(rows, erased, j)
