# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Tests for the configuration module and the exception hierarchy."""

from pathlib import Path

import pytest

from coreason_flexcode.config import FlexConfig
from coreason_flexcode.exceptions import (
    CoefficientError,
    DecodeError,
    ErasureBudgetError,
    FieldTooSmallError,
    FlexCodeError,
    InnerDecodeError,
    InvalidParameterError,
    ManifestError,
    NoSatisfiableLayerError,
    ProfileProductError,
    RepairError,
    ShardChecksumError,
    StorageError,
)


def test_flex_config_defaults() -> None:
    """Test that default configuration values are set correctly."""
    assert FlexConfig.SHARD_MAGIC == b"FLXC"
    assert FlexConfig.SHARD_FORMAT_VERSION == 1
    assert FlexConfig.MANIFEST_NAME == "manifest.json"
    assert FlexConfig.DEFAULT_OUT_DIR == Path("shards")
    assert FlexConfig.SHARD_NAME_TEMPLATE.format(index=7) == "node_007.flxc"
    assert FlexConfig.ENCODING == "utf-8"


def test_flex_config_integrity() -> None:
    """Test that the constants are mutually consistent."""
    assert FlexConfig.SHARD_NAME_TEMPLATE.endswith(FlexConfig.SHARD_SUFFIX)
    assert len(FlexConfig.SHARD_MAGIC) == 4
    assert FlexConfig.MSR_MAX_PARITY < FlexConfig.MSR_MAX_NODES
    assert FlexConfig.DEFAULT_TRIALS >= FlexConfig.STREAM_SIZE
    assert len(FlexConfig.SWEEP_RECOVERY) == len(FlexConfig.SWEEP_ROWS)
    assert 0 < FlexConfig.BETA_EPS < 1e-10


def test_exit_codes() -> None:
    """Test the exit code of every failure class."""
    assert FlexConfig.EXIT_OK == 0
    assert FlexCodeError.exit_code == FlexConfig.EXIT_UNEXPECTED
    assert InvalidParameterError.exit_code == FlexConfig.EXIT_VALIDATION
    assert DecodeError.exit_code == FlexConfig.EXIT_DECODE
    assert StorageError.exit_code == FlexConfig.EXIT_IO


@pytest.mark.parametrize(
    "error, family",
    [
        (ProfileProductError, InvalidParameterError),
        (FieldTooSmallError, InvalidParameterError),
        (CoefficientError, InvalidParameterError),
        (ErasureBudgetError, DecodeError),
        (RepairError, DecodeError),
        (NoSatisfiableLayerError, DecodeError),
        (ShardChecksumError, StorageError),
        (ManifestError, StorageError),
    ],
)
def test_exception_families(error: type[FlexCodeError], family: type[FlexCodeError]) -> None:
    """Test that each failure inherits the exit code of its family."""
    assert issubclass(error, family)
    assert error.exit_code == family.exit_code


def test_inner_decode_error_carries_location() -> None:
    """Test that InnerDecodeError reports its layer and row."""
    error = InnerDecodeError(2, 3, "singular")
    assert error.layer == 2
    assert error.row == 3
    assert "Layer 2 row 3" in str(error)
    assert isinstance(error, DecodeError)
