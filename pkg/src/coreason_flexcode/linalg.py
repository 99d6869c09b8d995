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
Dense linear algebra over finite fields.

All routines use Gauss-Jordan elimination with first-nonzero pivoting, so results
(and error messages) are deterministic. Matrices are 2-D galois arrays.
"""

from collections.abc import Sequence

import numpy as np
from galois import FieldArray

from coreason_flexcode.exceptions import FieldMismatchError, IndexRangeError, SingularSystemError


def _nonzero(vector: FieldArray) -> np.ndarray:
    return np.flatnonzero(np.asarray(vector.view(np.ndarray)))


def _as_matrix(a: FieldArray) -> FieldArray:
    if not isinstance(a, FieldArray):
        raise FieldMismatchError(f"Expected a field array, got {type(a).__name__}")
    if a.ndim == 1:
        return a.reshape(-1, 1)
    if a.ndim != 2:
        raise IndexRangeError(f"Expected a matrix, got an array with {a.ndim} dimensions")
    return a


def row_echelon(a: FieldArray) -> tuple[FieldArray, list[int]]:
    """
    Reduced row echelon form.

    Args:
        a: Matrix over a finite field.

    Returns:
        The reduced matrix and the list of pivot columns.
    """
    r = _as_matrix(a).copy()
    rows, cols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        candidates = _nonzero(r[row:, col])
        if candidates.size == 0:
            continue
        pivot = row + int(candidates[0])
        if pivot != row:
            r[[row, pivot]] = r[[pivot, row]]
        r[row] = r[row] / r[row, col]
        others = _nonzero(r[:, col])
        others = others[others != row]
        if others.size:
            r[others] = r[others] - r[others, col][:, None] * r[row][None, :]
        pivots.append(col)
        row += 1
    return r, pivots


def matrix_rank(a: FieldArray) -> int:
    """Rank of a matrix over its field."""
    if a.size == 0:
        return 0
    return len(row_echelon(a)[1])


def solve_linear(a: FieldArray, b: FieldArray) -> FieldArray:
    """
    Solve A X = B exactly.

    A may be square or overdetermined but must have full column rank; an
    overdetermined system must also be consistent.

    Args:
        a: Coefficient matrix (m x k, m >= k).
        b: Right-hand side (m x w) or vector of length m.

    Returns:
        X with shape (k, w), or (k,) when ``b`` is a vector.

    Raises:
        FieldMismatchError: If A and B live in different fields.
        SingularSystemError: If A is rank deficient or the system is inconsistent.
    """
    vector_rhs = b.ndim == 1
    a2 = _as_matrix(a)
    b2 = _as_matrix(b)
    if type(a2) is not type(b2):
        raise FieldMismatchError("Coefficient matrix and right-hand side belong to different fields")
    m, k = a2.shape
    if b2.shape[0] != m:
        raise IndexRangeError(f"Right-hand side has {b2.shape[0]} rows, expected {m}")
    if m < k:
        raise SingularSystemError(f"Underdetermined system: {m} equations for {k} unknowns")
    field = type(a2)
    augmented = field.Zeros((m, k + b2.shape[1]))
    augmented[:, :k] = a2
    augmented[:, k:] = b2
    reduced, pivots = row_echelon(augmented)
    if pivots[:k] != list(range(k)):
        raise SingularSystemError(f"Rank-deficient system: rank {sum(p < k for p in pivots)} < {k}")
    if len(pivots) > k:
        raise SingularSystemError("Inconsistent overdetermined system")
    x = reduced[:k, k:]
    return x[:, 0] if vector_rhs else x


def vandermonde(points: FieldArray, k: int) -> FieldArray:
    """
    k x |points| matrix with entry (i, j) = points[j] ** i.

    Raises:
        IndexRangeError: If k < 1 or points repeat.
    """
    if k < 1:
        raise IndexRangeError(f"Vandermonde height must be positive, got {k}")
    ints = np.asarray(points.view(np.ndarray))
    if np.unique(ints).size != ints.size:
        raise IndexRangeError("Vandermonde points must be pairwise distinct")
    field = type(points)
    matrix = field.Ones((k, points.size))
    for i in range(1, k):
        matrix[i] = matrix[i - 1] * points
    return matrix


def moore_matrix(points: FieldArray, rows: int, q: int) -> FieldArray:
    """Matrix with entry (i, j) = points[j] ** (q ** i) for i < rows."""
    field = type(points)
    matrix = field.Zeros((rows, points.size))
    if rows:
        matrix[0] = points
    for i in range(1, rows):
        matrix[i] = matrix[i - 1] ** q
    return matrix


def block_matrix(blocks: Sequence[Sequence[FieldArray]]) -> FieldArray:
    """Flatten a grid of equally sized blocks into one scalar matrix."""
    if not blocks or not blocks[0]:
        raise IndexRangeError("Block grid must be non-empty")
    field = type(blocks[0][0])
    height, width = blocks[0][0].shape
    out = field.Zeros((height * len(blocks), width * len(blocks[0])))
    for bi, block_row in enumerate(blocks):
        if len(block_row) != len(blocks[0]):
            raise IndexRangeError("Ragged block grid")
        for bj, block in enumerate(block_row):
            if type(block) is not field:
                raise FieldMismatchError("Blocks belong to different fields")
            out[bi * height : (bi + 1) * height, bj * width : (bj + 1) * width] = block
    return out


def hstack(columns: Sequence[FieldArray]) -> FieldArray:
    """Concatenate matrices of equal height side by side."""
    return block_matrix([list(columns)])
