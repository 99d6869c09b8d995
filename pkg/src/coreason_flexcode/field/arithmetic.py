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
Field construction and arithmetic helpers.

Covers canonical moduli, checked element arithmetic, Frobenius powers, rank over a
subfield, coset representatives and explicit subfield embeddings.
"""

from collections.abc import Callable, Sequence
from functools import lru_cache
from typing import Literal

import galois
import numpy as np
from galois import FieldArray

from coreason_flexcode.config import FlexConfig
from coreason_flexcode.exceptions import (
    FieldDivisionError,
    FieldMismatchError,
    FieldTooSmallError,
    IndexRangeError,
    SubfieldError,
)
from coreason_flexcode.field.models import CosetPartition, FieldSpec
from coreason_flexcode.linalg import matrix_rank, moore_matrix

ArithOp = Literal["add", "sub", "mul", "div"]


@lru_cache(maxsize=None)
def canonical_field(characteristic: int, degree: int = 1, subfield: FieldSpec | None = None) -> FieldSpec:
    """
    Field with a fixed, reproducible modulus.

    Table-sized fields use the lexicographically smallest primitive polynomial so
    that ``x`` generates F*; larger fields use the smallest irreducible one.

    Args:
        characteristic: Prime p.
        degree: Extension degree m.
        subfield: Optional declared subfield.

    Returns:
        The FieldSpec for GF(p^m).
    """
    if degree == 1:
        modulus: tuple[int, ...] = (1, 0)
    elif characteristic**degree <= FlexConfig.TABLE_FIELD_LIMIT:
        poly = galois.primitive_poly(characteristic, degree, method="min")
        modulus = tuple(int(c) for c in poly.coeffs)
    else:
        poly = galois.irreducible_poly(characteristic, degree, method="min")
        modulus = tuple(int(c) for c in poly.coeffs)
    return FieldSpec(characteristic=characteristic, degree=degree, modulus=modulus, subfield=subfield)


def _prime_power(order: int) -> tuple[int, int] | None:
    if order < 2 or not galois.is_prime_power(order):
        return None
    primes, multiplicities = galois.factors(order)
    return int(primes[0]), int(multiplicities[0])


def smallest_field(
    min_order: int,
    predicate: Callable[[int], bool] | None = None,
    characteristic: int | None = None,
) -> FieldSpec:
    """
    Smallest prime-power field of order >= ``min_order`` satisfying ``predicate``.

    Raises:
        FieldTooSmallError: If no field below the search limit qualifies.
    """
    for order in range(max(2, min_order), FlexConfig.FIELD_SEARCH_LIMIT + 1):
        decomposition = _prime_power(order)
        if decomposition is None:
            continue
        p, m = decomposition
        if characteristic is not None and p != characteristic:
            continue
        if predicate is None or predicate(order):
            return canonical_field(p, m)
    raise FieldTooSmallError(f"No field of order between {min_order} and {FlexConfig.FIELD_SEARCH_LIMIT} qualifies")


def _check_same_field(a: FieldArray, b: FieldArray) -> None:
    if not isinstance(a, FieldArray) or not isinstance(b, FieldArray):
        raise FieldMismatchError("Operands must be field elements")
    if type(a) is not type(b):
        raise FieldMismatchError(f"Operands belong to different fields: {type(a).name} and {type(b).name}")


def ff_arith(a: FieldArray, b: FieldArray, op: ArithOp) -> FieldArray:
    """
    Checked field arithmetic.

    Raises:
        FieldMismatchError: If the operands belong to different fields.
        FieldDivisionError: On division by zero.
    """
    _check_same_field(a, b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if np.any(np.asarray(b.view(np.ndarray)) == 0):
            raise FieldDivisionError("Division by zero")
        return a / b
    raise IndexRangeError(f"Unknown field operation {op!r}")


def _subfield_degree(q: int, field: type[FieldArray]) -> int:
    """Degree d with q = p^d and d | m, or raise."""
    p, m = int(field.characteristic), int(field.degree)
    d, power = 0, 1
    while power < q:
        power *= p
        d += 1
    if power != q or d == 0 or m % d:
        raise SubfieldError(f"{q} is not the order of a subfield of {field.name}")
    return d


def frobenius(a: FieldArray, i: int, q: int) -> FieldArray:
    """
    Return a ** (q ** i) where q is the order of a subfield of a's field.

    The exponent is reduced modulo the order of the Frobenius automorphism.
    """
    if i < 0:
        raise IndexRangeError(f"Frobenius power must be non-negative, got {i}")
    field = type(a)
    d = _subfield_degree(q, field)
    return a ** (q ** (i % (int(field.degree) // d)))


def as_field_vector(elems: Sequence[FieldArray] | FieldArray) -> FieldArray:
    """Collect elements of one field into a flat array."""
    if isinstance(elems, FieldArray):
        return elems.reshape(-1)
    if not elems:
        raise IndexRangeError("At least one element is required")
    field = type(elems[0])
    for element in elems:
        _check_same_field(elems[0], element)
    return field([int(element) for element in elems])


def rank_over_base(elems: Sequence[FieldArray] | FieldArray, base: FieldSpec) -> int:
    """
    Dimension of the E-span of the given elements of F.

    Prime base fields use coordinate expansion; larger subfields use the Moore
    matrix, whose F-rank equals the E-rank of its defining elements.

    Raises:
        FieldMismatchError: If the elements come from different fields.
        SubfieldError: If ``base`` is not a subfield of their field.
    """
    values = as_field_vector(elems)
    field = type(values)
    if base.characteristic != field.characteristic:
        raise SubfieldError(f"{base.label} is not a subfield of {field.name}")
    d = _subfield_degree(base.order, field)
    m = int(field.degree)
    if d == 1:
        p = base.characteristic
        ints = np.asarray(values.view(np.ndarray), dtype=np.int64)
        powers = np.array([p**t for t in range(m)], dtype=np.int64)
        coords = (ints[None, :] // powers[:, None]) % p
        prime_field = canonical_field(p).galois_field()
        return matrix_rank(prime_field(coords))
    return matrix_rank(moore_matrix(values, m // d, base.order))


def coset_reps(ambient: FieldSpec, base: FieldSpec, count: int) -> CosetPartition:
    """
    Representatives of ``count`` distinct cosets of E* in F*.

    With omega primitive in F, E* is the subgroup generated by omega^t where
    t = |F*| / |E*|, so omega^0 .. omega^(count-1) lie in distinct cosets.

    Raises:
        SubfieldError: If E is not a subfield of F.
        FieldTooSmallError: If fewer than ``count`` cosets exist.
    """
    field = ambient.galois_field()
    if base.characteristic != ambient.characteristic:
        raise SubfieldError(f"{base.label} is not a subfield of {ambient.label}")
    _subfield_degree(base.order, field)
    available = (ambient.order - 1) // (base.order - 1)
    if count < 1 or count > available:
        raise FieldTooSmallError(
            f"{count} coset representatives requested but {ambient.label} over {base.label} has {available}"
        )
    reps = field.primitive_element ** np.arange(count)
    return CosetPartition(ambient=ambient, base=base, reps=tuple(int(x) for x in reps), available=available)


@lru_cache(maxsize=None)
def _basis_images(ambient: FieldSpec, base: FieldSpec) -> tuple[int, ...]:
    field = ambient.galois_field()
    d = _subfield_degree(base.order, field)
    if d == 1:
        return (1,)
    step = (ambient.order - 1) // (base.order - 1)
    omega = field.primitive_element
    coefficients = field(list(base.modulus))
    for u in range(1, base.order):
        rho = omega ** (step * u)
        value = field(0)
        for c in coefficients:
            value = value * rho + c
        if value == 0:
            return tuple(int(x) for x in rho ** np.arange(d))
    raise SubfieldError(f"No root of the {base.label} modulus found in {ambient.label}")  # pragma: no cover


def subfield_basis_images(ambient: FieldSpec, base: FieldSpec) -> FieldArray:
    """Images in F of E's polynomial basis 1, x, ..., x^(d-1)."""
    return ambient.galois_field()(list(_basis_images(ambient, base)))


def embed(values: FieldArray, base: FieldSpec, ambient: FieldSpec) -> FieldArray:
    """
    Map elements of E into F through the explicit coordinate map.

    Args:
        values: Elements of E (any shape).
        base: The subfield E.
        ambient: The field F.

    Returns:
        The embedded elements, same shape, in F.
    """
    if type(values) is not base.galois_field():
        raise FieldMismatchError(f"Values do not belong to {base.label}")
    images = subfield_basis_images(ambient, base)
    d = images.size
    p = base.characteristic
    ints = np.asarray(values.view(np.ndarray), dtype=np.int64)
    powers = np.array([p**t for t in range(d)], dtype=np.int64)
    digits = (ints.reshape(-1, 1) // powers[None, :]) % p
    field = ambient.galois_field()
    embedded = field(digits) @ images.reshape(-1, 1)
    return embedded.reshape(ints.shape)


def in_subgroup(values: FieldArray, subgroup_order: int) -> np.ndarray:
    """Boolean mask of nonzero elements whose order divides ``subgroup_order``."""
    field = type(values)
    return np.asarray((values ** subgroup_order == field(1)) & (values != 0))
