# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Custom exceptions for flexible storage codes.

Every exception carries the process exit code the CLI reports for it.
"""

from typing import ClassVar


class FlexCodeError(Exception):
    """Base exception for flexcode."""

    exit_code: ClassVar[int] = 1


# Validation (exit 2)


class InvalidParameterError(FlexCodeError):
    """Raised when user-supplied parameters are invalid."""

    exit_code: ClassVar[int] = 2


class ProfileError(InvalidParameterError):
    """Raised when a flexible profile is inconsistent."""

    pass


class ProfileProductError(ProfileError):
    """Raised when k_j * l_j differs from k * l for some layer."""

    pass


class ProfileMonotonicityError(ProfileError):
    """Raised when k_j is not strictly decreasing or l_j not strictly increasing."""

    pass


class ProfileTerminalError(ProfileError):
    """Raised when the last layer does not match the global (k, l)."""

    pass


class ProfileDivisibilityError(ProfileError):
    """Raised when a family-specific divisibility requirement fails."""

    pass


class RecoveryThresholdError(ProfileError):
    """Raised when a stated recovery threshold R_j disagrees with the family rule."""

    pass


class IndexRangeError(InvalidParameterError):
    """Raised when a layer, row or symbol index is out of range."""

    pass


class FieldError(InvalidParameterError):
    """Base exception for finite-field misuse."""

    pass


class FieldMismatchError(FieldError):
    """Raised when operands belong to different fields."""

    pass


class FieldDivisionError(FieldError):
    """Raised on division by zero."""

    pass


class SubfieldError(FieldError):
    """Raised when a declared subfield does not embed in the ambient field."""

    pass


class FieldTooSmallError(FieldError):
    """Raised when a field lacks the points, cosets or elements a construction needs."""

    pass


class ParameterCapError(InvalidParameterError):
    """Raised when parameters exceed the supported desk-scale caps."""

    pass


class CoefficientError(InvalidParameterError):
    """Raised when not enough additional coefficients are available."""

    pass


class LatencyParameterError(InvalidParameterError):
    """Raised when latency model parameters are out of range."""

    pass


# Decode infeasible (exit 3)


class DecodeError(FlexCodeError):
    """Raised when information cannot be recovered."""

    exit_code: ClassVar[int] = 3


class SingularSystemError(DecodeError):
    """Raised when a linear system is singular or rank deficient."""

    pass


class InsufficientNodesError(DecodeError):
    """Raised when fewer nodes than the recovery threshold are supplied."""

    pass


class InnerDecodeError(DecodeError):
    """Raised when a row of a layer fails to decode."""

    def __init__(self, layer: int, row: int, reason: str) -> None:
        super().__init__(f"Layer {layer} row {row} failed to decode: {reason}")
        self.layer = layer
        self.row = row


class RankDeficiencyError(DecodeError):
    """Raised when fewer independent evaluations than required survive."""

    pass


class ErasureBudgetError(DecodeError):
    """Raised when a failure pattern exceeds the tolerated erasure budget."""

    pass


class RepairError(DecodeError):
    """Raised when a node cannot be repaired from the available helpers."""

    pass


class NoSatisfiableLayerError(DecodeError):
    """Raised when no layer can be decoded from the supplied shards."""

    pass


# Storage (exit 4)


class StorageError(FlexCodeError):
    """Raised on shard or manifest I/O failures."""

    exit_code: ClassVar[int] = 4


class ShardFormatError(StorageError):
    """Raised when a shard file is malformed."""

    pass


class ShardChecksumError(StorageError):
    """Raised when a shard header or payload fails its checksum."""

    pass


class ManifestError(StorageError):
    """Raised when the manifest is missing or inconsistent with the shards."""

    pass
