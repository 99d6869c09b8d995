# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Shard files, manifests and the encode/decode/repair pipeline."""

from coreason_flexcode.storage.codes import StorageCode, audit_code, build_code
from coreason_flexcode.storage.models import (
    AuditSummary,
    ComputeConfig,
    Construction,
    DecodeReport,
    LatencyConfig,
    LayerConfig,
    Manifest,
    ProfileConfig,
    RepairOutcome,
    Shard,
    ShardMeta,
)
from coreason_flexcode.storage.pipeline import ShardStore, select_layer, shard_paths
from coreason_flexcode.storage.shards import (
    bytes_to_symbols,
    decode_shard,
    encode_shard,
    file_md5,
    pack_bits,
    read_manifest,
    read_shard,
    shard_name,
    symbols_to_bytes,
    unpack_bits,
    write_manifest,
    write_shard,
)

__all__ = [
    "AuditSummary",
    "ComputeConfig",
    "Construction",
    "DecodeReport",
    "LatencyConfig",
    "LayerConfig",
    "Manifest",
    "ProfileConfig",
    "RepairOutcome",
    "Shard",
    "ShardMeta",
    "ShardStore",
    "StorageCode",
    "audit_code",
    "build_code",
    "bytes_to_symbols",
    "decode_shard",
    "encode_shard",
    "file_md5",
    "pack_bits",
    "read_manifest",
    "read_shard",
    "select_layer",
    "shard_name",
    "shard_paths",
    "symbols_to_bytes",
    "unpack_bits",
    "write_manifest",
    "write_shard",
]
