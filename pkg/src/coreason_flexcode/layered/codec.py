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
Family-agnostic layered encoder and decoder.

Each row of layer j is a codeword of an inner (n + k_j - k_a, k_j) code. The first n
positions are stored; the remaining k_j - k_a extra parities become information
symbols of lower layers. Decoding runs from the requested layer upward, feeding
recovered extras back into the upper rows.
"""

from collections.abc import Callable, Sequence
from typing import Protocol

import numpy as np
from galois import FieldArray

from coreason_flexcode.exceptions import DecodeError, IndexRangeError, InnerDecodeError, InsufficientNodesError
from coreason_flexcode.layered.models import CodewordArray, LayerPlan
from coreason_flexcode.utils.logger import logger


class RowCodec(Protocol):
    """Inner code of one row: ``length`` visible positions, dimension ``dimension``."""

    @property
    def length(self) -> int: ...

    @property
    def dimension(self) -> int: ...

    def encode(self, info: FieldArray) -> FieldArray:
        """Map (dimension, w) information to (length, w) codeword symbols."""
        ...

    def decode(self, positions: Sequence[int], symbols: FieldArray) -> FieldArray:
        """Recover (dimension, w) information from symbols at 0-based ``positions``."""
        ...


# (layer j, row x within the layer) -> inner codec for that row
CodecFactory = Callable[[int, int], RowCodec]

SlotKey = tuple[int, int, int]


def _as_blocks(info: FieldArray, count: int) -> FieldArray:
    blocks = info.reshape(info.shape[0], -1) if info.ndim > 1 else info.reshape(-1, 1)
    if blocks.shape[0] != count:
        raise IndexRangeError(f"Expected {count} information symbols, got {blocks.shape[0]}")
    return blocks


def _stack(field: type[FieldArray], symbols: Sequence[FieldArray], width: int) -> FieldArray:
    out = field.Zeros((len(symbols), width))
    for i, symbol in enumerate(symbols):
        out[i] = symbol
    return out


def layered_encode(info: FieldArray, plan: LayerPlan, factory: CodecFactory) -> CodewordArray:
    """
    Encode k*l information symbols into the stored l x n array.

    Args:
        info: Shape (k*l,) for scalar codes or (k*l, w) for block symbols.
        plan: Validated layer plan.
        factory: Inner codec per (layer, row).

    Returns:
        The stored CodewordArray; extra parities are consumed by lower layers.
    """
    profile = plan.profile
    blocks = _as_blocks(info, profile.info_symbols)
    field = type(blocks)
    width = blocks.shape[1]
    n = profile.n
    stored = field.Zeros((profile.sub_packetization, n, width))
    pending: dict[SlotKey, FieldArray] = {}

    for geometry in plan.layers:
        j = geometry.index
        for x in range(1, geometry.row_count + 1):
            if j == 1:
                start = (x - 1) * geometry.dimension
                row_info = blocks[start : start + geometry.dimension]
            else:
                row_info = _stack(field, [pending.pop((j, x, y)) for y in range(1, geometry.dimension + 1)], width)
            codeword = factory(j, x).encode(row_info)
            stored[geometry.row_start + x - 1] = codeword[:n]
            for y in range(1, geometry.extra_count + 1):
                pending[plan.target_of(j, x, y).target] = codeword[n + y - 1]
        logger.debug(f"Encoded layer {j} ({geometry.row_count} rows, {geometry.extra_count} extras per row)")
    return CodewordArray(profile=profile, symbols=stored)


def layered_decode(
    cols: Sequence[int],
    rows: FieldArray,
    j: int,
    plan: LayerPlan,
    factory: CodecFactory,
) -> FieldArray:
    """
    Recover all information from the first l_j rows of R_j nodes.

    Args:
        cols: 0-based node indices (at least R_j; the first R_j are used).
        rows: Shape (l_j, len(cols)) or (l_j, len(cols), w).
        j: Layer whose (R_j, l_j) access pattern is used.
        plan: Validated layer plan.
        factory: Inner codec per (layer, row).

    Returns:
        Information of shape (k*l, w).

    Raises:
        InsufficientNodesError: If fewer than R_j nodes are supplied.
        InnerDecodeError: If some row fails, with its layer and row.
    """
    profile = plan.profile
    if not 1 <= j <= profile.depth:
        raise IndexRangeError(f"Layer {j} outside 1..{profile.depth}")
    target = plan.layer(j)
    if len(set(cols)) != len(cols) or any(not 0 <= c < profile.n for c in cols):
        raise IndexRangeError(f"Node indices must be distinct and within 0..{profile.n - 1}")
    if len(cols) < target.recovery:
        raise InsufficientNodesError(f"Layer {j} needs {target.recovery} nodes, got {len(cols)}")
    data = rows if rows.ndim == 3 else rows.reshape(rows.shape[0], rows.shape[1], 1)
    if data.shape[0] < target.row_stop or data.shape[1] != len(cols):
        raise IndexRangeError(f"Expected {target.row_stop} rows for {len(cols)} nodes, got shape {rows.shape}")

    used = list(cols)[: target.recovery]
    field = type(data)
    width = data.shape[2]
    n = profile.n
    decoded: dict[SlotKey, FieldArray] = {}
    info = field.Zeros((profile.info_symbols, width))

    for jj in range(j, 0, -1):
        geometry = plan.layer(jj)
        for x in range(1, geometry.row_count + 1):
            positions = list(used)
            symbols = [data[geometry.row_start + x - 1, i] for i in range(len(used))]
            for y in range(1, geometry.extra_count + 1):
                ref = plan.target_of(jj, x, y)
                if ref.target_layer <= j:
                    positions.append(n + y - 1)
                    symbols.append(decoded[ref.target])
            try:
                row_info = factory(jj, x).decode(positions, _stack(field, symbols, width))
            except DecodeError as exc:
                raise InnerDecodeError(jj, x, str(exc)) from exc
            if jj == 1:
                info[(x - 1) * geometry.dimension : x * geometry.dimension] = row_info
            else:
                for t in range(1, geometry.dimension + 1):
                    decoded[(jj, x, t)] = row_info[t - 1]
        logger.debug(f"Decoded layer {jj} using {len(used)} nodes")
    return info


def codeword_rows_equal(a: CodewordArray, b: CodewordArray) -> bool:
    """Exact equality of two stored arrays."""
    return bool(np.array_equal(a.symbols.view(np.ndarray), b.symbols.view(np.ndarray)))
