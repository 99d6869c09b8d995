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
Flexible locally recoverable codes built from good-polynomial rows.

Every row of layer j evaluates f(x) = sum_{i<r} x^i sum_{m<k_j/r} u_{i,m} g(x)^m with
g(x) = x^(r+1). Because g is constant on each multiplicative coset of the order-(r+1)
subgroup, f restricted to a group is a polynomial of degree below r, which gives
every stored node a repair group of r peers.
"""

from collections.abc import Collection, Sequence
from functools import lru_cache

import numpy as np
from galois import FieldArray

from coreason_flexcode.exceptions import (
    FieldTooSmallError,
    IndexRangeError,
    ProfileDivisibilityError,
    ProfileError,
    RepairError,
)
from coreason_flexcode.field import FieldSpec, smallest_field
from coreason_flexcode.layered import (
    CodeFamily,
    CodewordArray,
    FlexProfile,
    LayerPlan,
    layered_decode,
    layered_encode,
    validate_profile,
)
from coreason_flexcode.linalg import solve_linear
from coreason_flexcode.lrc.models import LocalityReport, LrcLayout
from coreason_flexcode.utils.logger import logger


def _group_counts(profile: FlexProfile) -> tuple[int, int]:
    r = profile.locality
    if r is None:
        raise ProfileDivisibilityError("LRC profiles require a locality r")
    return profile.n // (r + 1), (profile.layers[0].dimension - profile.k) // r


def lrc_field_for(profile: FlexProfile) -> FieldSpec:
    """Smallest field whose multiplicative group splits into enough cosets of size r+1."""
    stored, extra = _group_counts(profile)
    size = (profile.locality or 0) + 1
    return smallest_field(
        profile.n + extra * size,
        predicate=lambda q: (q - 1) % size == 0 and (q - 1) // size >= stored + extra,
    )


def build_layout(field: FieldSpec, n: int, r: int, profile: FlexProfile) -> LrcLayout:
    """
    Partition evaluation points into groups on which g(x) = x^(r+1) is constant.

    Group g is the coset alpha^g H of the subgroup H generated by alpha^((q-1)/(r+1)).

    Raises:
        ProfileDivisibilityError: If (r+1) does not divide n or r does not divide some k_j.
        FieldTooSmallError: If the field has no subgroup of order r+1 or too few cosets.
    """
    if n % (r + 1):
        raise ProfileDivisibilityError(f"Group size r+1={r + 1} does not divide n={n}")
    if any(layer.dimension % r for layer in profile.layers):
        raise ProfileDivisibilityError(f"Locality r={r} must divide every layer dimension")
    q = field.order
    if (q - 1) % (r + 1):
        raise FieldTooSmallError(f"{field.label} has no multiplicative subgroup of order {r + 1}")
    cosets = (q - 1) // (r + 1)
    stored = n // (r + 1)
    extra = (profile.layers[0].dimension - profile.k) // r
    if stored + extra > cosets:
        raise FieldTooSmallError(f"{field.label} offers {cosets} groups of size {r + 1}, need {stored + extra}")

    gf = field.galois_field()
    alpha = gf.primitive_element
    step = (q - 1) // (r + 1)
    groups = []
    for g in range(stored + extra):
        exponents = [g + m * step for m in range(r + 1)]
        groups.append(tuple(int(x) for x in alpha ** np.array(exponents)))
    return LrcLayout(
        field=field,
        n=n,
        locality=r,
        groups=tuple(groups[:stored]),
        extra_groups=tuple(groups[stored:]),
    )


def lrc_row_points(layout: LrcLayout, j: int, profile: FlexProfile) -> tuple[FieldArray, FieldArray, FieldArray]:
    """
    Evaluation points of a layer-j row.

    Returns:
        (stored points, extra-parity points, omitted points): n, k_j - k_a and
        (k_j - k_a)/r points respectively.
    """
    if not 1 <= j <= profile.depth:
        raise IndexRangeError(f"Layer {j} outside 1..{profile.depth}")
    extras = profile.layers[j - 1].dimension - profile.k
    return layout.stored_points(), layout.extra_points(extras), layout.omitted_points(extras)


def check_locality(layout: LrcLayout) -> LocalityReport:
    """Evaluate g on every group and check that the groups are pairwise disjoint."""
    g = layout.good_polynomial()
    gf = layout.field.galois_field()
    values = []
    constant = True
    for group in (*layout.groups, *layout.extra_groups):
        evaluated = g(gf(list(group)))
        constant = constant and bool(np.all(evaluated == evaluated[0]))
        values.append(int(evaluated[0]))
    flat = [p for group in (*layout.groups, *layout.extra_groups) for p in group]
    return LocalityReport(
        constant_on_groups=constant,
        disjoint=len(set(flat)) == len(flat),
        group_values=tuple(values),
    )


def lagrange_weights(points: FieldArray, target: FieldArray) -> FieldArray:
    """Weights w with p(target) = sum_m w_m p(points_m) for every p of degree < len(points)."""
    gf = type(points)
    weights = gf.Ones(points.size)
    for m in range(points.size):
        for t in range(points.size):
            if t != m:
                weights[m] *= (target - points[t]) / (points[m] - points[t])
    return weights


class LrcRowCode:
    """Good-polynomial row code of one layer: stored points, then r extras per extra group."""

    def __init__(self, layout: LrcLayout, dimension: int, extras: int) -> None:
        self.layout = layout
        r = layout.locality
        gf = layout.field.galois_field()
        self._dimension = dimension
        self.points = gf(np.concatenate([layout.stored_points(), layout.extra_points(extras)]))
        self.omitted = layout.omitted_points(extras)
        self.exponents = [i + (r + 1) * m for i in range(r) for m in range(dimension // r)]
        self.generator = self._evaluations(self.points)

    def _evaluations(self, points: FieldArray) -> FieldArray:
        gf = type(points)
        matrix = gf.Zeros((self._dimension, points.size))
        for b, e in enumerate(self.exponents):
            matrix[b] = points**e
        return matrix

    @property
    def length(self) -> int:
        return int(self.points.size)

    @property
    def dimension(self) -> int:
        return self._dimension

    def encode(self, info: FieldArray) -> FieldArray:
        if info.shape[0] != self.dimension:
            raise IndexRangeError(f"Row code expects {self.dimension} information symbols, got {info.shape[0]}")
        return self.generator.T @ info

    def decode(self, positions: Sequence[int], symbols: FieldArray) -> FieldArray:
        """
        Solve for the coefficients after completing every fully known extra group.

        The missing member of such a group follows from its r known members by
        Lagrange interpolation of the degree-(r-1) restriction of f.
        """
        if any(not 0 <= p < self.length for p in positions):
            raise IndexRangeError(f"Positions must lie in 0..{self.length - 1}")
        gf = type(self.points)
        n, r = self.layout.n, self.layout.locality
        known = {p: symbols[i] for i, p in enumerate(positions)}
        rows = [self.generator[:, p] for p in positions]
        values = [symbols[i] for i in range(len(positions))]
        for e in range(self.omitted.size):
            members = [n + e * r + m for m in range(r)]
            if all(p in known for p in members):
                weights = lagrange_weights(self.points[members], self.omitted[e])
                completed = gf.Zeros(symbols.shape[1:])
                for m, p in enumerate(members):
                    completed += weights[m] * known[p]
                values.append(completed)
                rows.append(self._evaluations(self.omitted[e : e + 1])[:, 0])
        system = gf(np.stack([np.asarray(row) for row in rows]))
        rhs = gf(np.stack([np.asarray(v) for v in values]))
        return solve_linear(system, rhs)


def lrc_encode_row(info: FieldArray, layout: LrcLayout, j: int, profile: FlexProfile) -> FieldArray:
    """Evaluations of one layer-j row: n stored values followed by k_j - k_a extras."""
    extras = profile.layers[j - 1].dimension - profile.k
    code = LrcRowCode(layout, profile.layers[j - 1].dimension, extras)
    blocks = info.reshape(-1, 1) if info.ndim == 1 else info
    out = code.encode(blocks)
    return out[:, 0] if info.ndim == 1 else out


def local_repair(
    arr: CodewordArray,
    failed: int,
    layout: LrcLayout,
    missing: Collection[int] = (),
) -> FieldArray:
    """
    Rebuild all rows of node ``failed`` from the r other members of its group.

    Args:
        arr: Stored array; entries of ``failed`` and ``missing`` are ignored.
        failed: 0-based node index.
        layout: The code's group layout.
        missing: Other unavailable nodes.

    Returns:
        Shape (l, block_size) contents of the failed node.

    Raises:
        RepairError: If a group peer is also unavailable.
    """
    if not 0 <= failed < layout.n:
        raise IndexRangeError(f"Node {failed} outside 0..{layout.n - 1}")
    peers = layout.peers(failed)
    lost = sorted(set(peers) & set(missing))
    if lost:
        raise RepairError(f"Node {failed} cannot be repaired locally: group peers {lost} are unavailable")
    points = layout.stored_points()
    weights = lagrange_weights(points[peers], points[failed])
    repaired = arr.symbols[:, peers, :] * weights[None, :, None]
    logger.debug(f"Local repair of node {failed} from peers {peers}")
    return repaired.sum(axis=1)


class FlexLrcCode:
    """Flexible LRC over the smallest field with enough evaluation groups."""

    def __init__(self, profile: FlexProfile, field: FieldSpec | None = None) -> None:
        if profile.family is not CodeFamily.LRC or profile.locality is None:
            raise ProfileError("Expected an LRC profile with a locality")
        self.logger = logger.bind(agent="FlexLrcCode")
        self.plan: LayerPlan = validate_profile(profile)
        self.field_spec = field or lrc_field_for(profile)
        self.field = self.field_spec.galois_field()
        self.layout = build_layout(self.field_spec, profile.n, profile.locality, profile)
        self.block_size = 1
        codes = [LrcRowCode(self.layout, g.dimension, g.extra_count) for g in self.plan.layers]
        self.factory = lambda j, x: codes[j - 1]
        self.logger.debug(
            f"Flexible LRC over {self.field_spec.label}: {len(self.layout.groups)} groups of {profile.locality + 1}"
        )

    @property
    def profile(self) -> FlexProfile:
        return self.plan.profile

    @property
    def info_length(self) -> int:
        return self.profile.info_symbols

    def encode(self, info: FieldArray) -> CodewordArray:
        return layered_encode(info, self.plan, self.factory)

    def decode(self, cols: Sequence[int], rows: FieldArray, j: int) -> FieldArray:
        return layered_decode(cols, rows, j, self.plan, self.factory)[:, 0]

    def decode_nodes(self, cols: Sequence[int], rows: FieldArray, j: int) -> FieldArray:
        return layered_decode(cols, rows, j, self.plan, self.factory)

    def repair(self, arr: CodewordArray, failed: int, missing: Collection[int] = ()) -> FieldArray:
        return local_repair(arr, failed, self.layout, missing)


@lru_cache(maxsize=32)
def build_lrc_code(profile: FlexProfile) -> FlexLrcCode:
    return FlexLrcCode(profile)


def flex_lrc_decode(cols: Sequence[int], rows: FieldArray, j: int, profile: FlexProfile) -> FieldArray:
    """Decode all k*l information symbols from R_j = k_j + k_j/r - 1 nodes and their first l_j rows."""
    return build_lrc_code(profile).decode(cols, rows, j)
