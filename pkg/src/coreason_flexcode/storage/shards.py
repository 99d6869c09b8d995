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
Shard file format and symbol packing.

A shard is, in order:

    magic "FLXC" | version u16 | family u8 | node u16 | payload length u64 | meta length u32
    | meta JSON | MD5 of everything above (16 bytes) | payload

All integers are big-endian. The payload lists, stripe after stripe, the node's rows
in layer order, each row holding ``block_size`` symbols of ``symbol_width`` bytes.
"""

import hashlib
import struct
from pathlib import Path

import numpy as np
from numpy.typing import NDArray
from pydantic import ValidationError

from coreason_flexcode.config import FlexConfig
from coreason_flexcode.exceptions import ManifestError, ShardChecksumError, ShardFormatError, StorageError
from coreason_flexcode.layered import CodeFamily
from coreason_flexcode.storage.models import Manifest, Shard, ShardMeta
from coreason_flexcode.utils.logger import logger

HEADER = struct.Struct(">4sHBHQI")
DIGEST_SIZE = 16
CHUNK_SIZE = 8192
FAMILY_TAGS: dict[CodeFamily, int] = {family: tag for tag, family in enumerate(CodeFamily)}


def symbols_to_bytes(values: NDArray[np.int64], width: int) -> bytes:
    """Fixed-width big-endian encoding of non-negative symbols."""
    wide = np.asarray(values, dtype=np.uint64).reshape(-1).astype(">u8")
    return wide.view(np.uint8).reshape(-1, 8)[:, 8 - width :].tobytes()


def bytes_to_symbols(data: bytes, width: int) -> NDArray[np.int64]:
    """Inverse of :func:`symbols_to_bytes`."""
    if len(data) % width:
        raise ShardFormatError(f"Payload of {len(data)} bytes is not a multiple of the symbol width {width}")
    raw = np.frombuffer(data, dtype=np.uint8).reshape(-1, width)
    wide = np.zeros((raw.shape[0], 8), dtype=np.uint8)
    wide[:, 8 - width :] = raw
    return wide.view(">u8").reshape(-1).astype(np.int64)


def pack_bits(data: bytes, bits: int, count: int) -> NDArray[np.int64]:
    """Split ``data`` into ``count`` symbols of ``bits`` bits each, zero-padding the tail."""
    stream = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
    total = bits * count
    if stream.size > total:
        raise StorageError(f"{len(data)} bytes do not fit in {count} symbols of {bits} bits")
    padded = np.zeros(total, dtype=np.int64)
    padded[: stream.size] = stream
    weights = np.left_shift(1, np.arange(bits - 1, -1, -1, dtype=np.int64))
    return padded.reshape(count, bits) @ weights


def unpack_bits(values: NDArray[np.int64], bits: int, length: int) -> bytes:
    """Concatenate the low ``bits`` bits of each symbol and keep the first ``length`` bytes."""
    shifts = np.arange(bits - 1, -1, -1, dtype=np.int64)
    stream = ((np.asarray(values, dtype=np.int64).reshape(-1, 1) >> shifts) & 1).astype(np.uint8)
    return np.packbits(stream.reshape(-1))[:length].tobytes()


def file_md5(path: Path) -> str:
    """
    Calculate the MD5 hash of a file.

    Raises:
        StorageError: If the file cannot be read.
    """
    digest = hashlib.md5()
    try:
        with open(path, "rb") as handle:
            for chunk in iter(lambda: handle.read(CHUNK_SIZE), b""):
                digest.update(chunk)
    except OSError as e:
        logger.error(f"Failed to hash {path}: {e}")
        raise StorageError(f"Failed to hash {path}: {e}") from e
    return digest.hexdigest()


def shard_name(node: int) -> str:
    return FlexConfig.SHARD_NAME_TEMPLATE.format(index=node)


def encode_shard(meta: ShardMeta, symbols: NDArray[np.int64]) -> bytes:
    """Serialize one node's (stripes, l, block_size) symbols; the payload digest in ``meta`` is recomputed."""
    payload = symbols_to_bytes(symbols, meta.field.symbol_width)
    meta = meta.model_copy(update={"payload_md5": hashlib.md5(payload).hexdigest()})
    meta_bytes = meta.model_dump_json().encode(FlexConfig.ENCODING)
    head = HEADER.pack(
        FlexConfig.SHARD_MAGIC,
        FlexConfig.SHARD_FORMAT_VERSION,
        FAMILY_TAGS[meta.config.family],
        meta.node,
        len(payload),
        len(meta_bytes),
    )
    return head + meta_bytes + hashlib.md5(head + meta_bytes).digest() + payload


def decode_shard(blob: bytes, source: str = "<bytes>") -> Shard:
    """
    Parse and verify a shard.

    Raises:
        ShardFormatError: On a bad magic, version, length or metadata.
        ShardChecksumError: If the header or payload digest does not match.
    """
    if len(blob) < HEADER.size:
        raise ShardFormatError(f"{source}: truncated header")
    magic, version, tag, node, payload_length, meta_length = HEADER.unpack_from(blob)
    if magic != FlexConfig.SHARD_MAGIC:
        raise ShardFormatError(f"{source}: bad magic {magic!r}")
    if version != FlexConfig.SHARD_FORMAT_VERSION:
        raise ShardFormatError(f"{source}: unsupported format version {version}")
    meta_end = HEADER.size + meta_length
    payload_start = meta_end + DIGEST_SIZE
    if len(blob) != payload_start + payload_length:
        raise ShardFormatError(f"{source}: expected {payload_start + payload_length} bytes, found {len(blob)}")
    if hashlib.md5(blob[:meta_end]).digest() != blob[meta_end:payload_start]:
        raise ShardChecksumError(f"{source}: header checksum mismatch")
    try:
        meta = ShardMeta.model_validate_json(blob[HEADER.size : meta_end])
    except ValidationError as e:
        raise ShardFormatError(f"{source}: invalid metadata: {e}") from e
    if meta.node != node or FAMILY_TAGS[meta.config.family] != tag:
        raise ShardFormatError(f"{source}: fixed header disagrees with metadata")
    payload = blob[payload_start:]
    if hashlib.md5(payload).hexdigest() != meta.payload_md5:
        raise ShardChecksumError(f"{source}: payload checksum mismatch")

    values = bytes_to_symbols(payload, meta.field.symbol_width)
    rows = meta.config.sub_packetization
    if values.size != meta.stripes * rows * meta.block_size:
        raise ShardFormatError(f"{source}: payload holds {values.size} symbols, metadata implies more or fewer")
    if values.size and int(values.max()) >= meta.field.order:
        raise ShardFormatError(f"{source}: symbol outside {meta.field.label}")
    gf = meta.field.galois_field()
    symbols = gf(values.reshape(meta.stripes, rows, meta.block_size))
    return Shard(format_version=version, meta=meta, symbols=symbols)


def write_shard(path: Path, meta: ShardMeta, symbols: NDArray[np.int64]) -> str:
    """Write a shard file and return its MD5 hex digest."""
    blob = encode_shard(meta, symbols)
    try:
        path.write_bytes(blob)
    except OSError as e:
        logger.error(f"Failed to write {path}: {e}")
        raise StorageError(f"Failed to write {path}: {e}") from e
    return hashlib.md5(blob).hexdigest()


def read_shard(path: Path) -> Shard:
    try:
        blob = path.read_bytes()
    except OSError as e:
        raise StorageError(f"Failed to read {path}: {e}") from e
    return decode_shard(blob, path.name)


def write_manifest(directory: Path, manifest: Manifest) -> Path:
    path = directory / FlexConfig.MANIFEST_NAME
    path.write_text(manifest.model_dump_json(indent=2), encoding=FlexConfig.ENCODING)
    return path


def read_manifest(directory: Path) -> Manifest | None:
    """Manifest in ``directory``, or None when absent."""
    path = directory / FlexConfig.MANIFEST_NAME
    if not path.exists():
        return None
    try:
        return Manifest.model_validate_json(path.read_text(encoding=FlexConfig.ENCODING))
    except ValidationError as e:
        raise ManifestError(f"Invalid manifest {path}: {e}") from e
