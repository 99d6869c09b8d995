# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Configuration module for flexible storage codes."""

from pathlib import Path
from typing import Final


class FlexConfig:
    """Configuration constants for the flexcode library and CLI."""

    # Shard Format
    SHARD_MAGIC: Final[bytes] = b"FLXC"
    SHARD_FORMAT_VERSION: Final[int] = 1
    SHARD_SUFFIX: Final[str] = ".flxc"
    SHARD_NAME_TEMPLATE: Final[str] = "node_{index:03d}.flxc"
    MANIFEST_NAME: Final[str] = "manifest.json"
    DEFAULT_OUT_DIR: Final[Path] = Path("shards")
    ENCODING: Final[str] = "utf-8"

    # Exit Codes
    EXIT_OK: Final[int] = 0
    EXIT_UNEXPECTED: Final[int] = 1
    EXIT_VALIDATION: Final[int] = 2
    EXIT_DECODE: Final[int] = 3
    EXIT_IO: Final[int] = 4

    # Fields
    TABLE_FIELD_LIMIT: Final[int] = 2**16  # lookup tables up to this order, explicit calculation above
    FIELD_SEARCH_LIMIT: Final[int] = 2**16

    # MSR desk-scale caps (L = r^n grows fast)
    MSR_MAX_NODES: Final[int] = 5
    MSR_MAX_PARITY: Final[int] = 3

    # Monte Carlo
    DEFAULT_SEED: Final[int] = 20240101
    DEFAULT_TRIALS: Final[int] = 100_000
    STREAM_SIZE: Final[int] = 100_000

    # Incomplete beta continued fraction
    BETA_MAX_ITER: Final[int] = 10_000
    BETA_EPS: Final[float] = 1.0e-15
    BETA_TINY: Final[float] = 1.0e-300

    # Latency sweep defaults (16-node HDD scenario)
    SWEEP_NODES: Final[int] = 16
    SWEEP_RECOVERY: Final[tuple[int, ...]] = (15, 12)
    SWEEP_ROWS: Final[tuple[int, ...]] = (4, 5)
    SWEEP_T_POS: Final[float] = 1.0
    SWEEP_T_TRANS_MAX: Final[float] = 0.35
    SWEEP_POINTS: Final[int] = 36
