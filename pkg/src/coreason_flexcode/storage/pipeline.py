# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Encode files into per-node shards and decode or repair them."""

import math
from collections.abc import Sequence
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

from coreason_flexcode.config import FlexConfig
from coreason_flexcode.exceptions import (
    IndexRangeError,
    InsufficientNodesError,
    ManifestError,
    NoSatisfiableLayerError,
    ShardChecksumError,
    ShardFormatError,
    StorageError,
)
from coreason_flexcode.layered import CodeFamily, CodewordArray, FlexProfile
from coreason_flexcode.lrc import FlexLrcCode
from coreason_flexcode.msr import FlexMsrCode, naive_repair_bandwidth
from coreason_flexcode.storage.codes import StorageCode, build_code
from coreason_flexcode.storage.models import DecodeReport, Manifest, ProfileConfig, RepairOutcome, Shard, ShardMeta
from coreason_flexcode.storage.shards import (
    file_md5,
    pack_bits,
    read_manifest,
    read_shard,
    shard_name,
    unpack_bits,
    write_manifest,
    write_shard,
)
from coreason_flexcode.utils.logger import logger


def select_layer(profile: FlexProfile, available: int, layer: int | None = None) -> int:
    """
    Layer to decode with ``available`` nodes.

    An explicit ``layer`` must be satisfiable. Otherwise the satisfiable layer reading the
    fewest symbols R_j * l_j wins, ties going to the smaller j.

    Raises:
        IndexRangeError: If ``layer`` is outside 1..a.
        InsufficientNodesError: If the requested layer needs more nodes.
        NoSatisfiableLayerError: If no layer is satisfiable.
    """
    if layer is not None:
        if not 1 <= layer <= profile.depth:
            raise IndexRangeError(f"Layer {layer} outside 1..{profile.depth}")
        needed = profile.layers[layer - 1].recovery
        if available < needed:
            raise InsufficientNodesError(f"Layer {layer} needs {needed} shards, got {available}")
        return layer
    candidates = [
        (spec.recovery * spec.rows, j) for j, spec in enumerate(profile.layers, start=1) if spec.recovery <= available
    ]
    if not candidates:
        smallest = min(spec.recovery for spec in profile.layers)
        raise NoSatisfiableLayerError(f"{available} shards satisfy no layer; at least {smallest} are needed")
    return min(candidates)[1]


def shard_paths(inputs: Sequence[Path]) -> list[Path]:
    """Expand directories into their shard files."""
    paths: list[Path] = []
    for item in inputs:
        if item.is_dir():
            paths.extend(sorted(item.glob(f"*{FlexConfig.SHARD_SUFFIX}")))
        else:
            paths.append(item)
    return paths


class ShardStore:
    """Reads and writes the shards and manifest of one encoded file inside a directory."""

    def __init__(self, directory: Path = FlexConfig.DEFAULT_OUT_DIR) -> None:
        self.directory = directory
        self.logger = logger.bind(agent="ShardStore")

    def encode_file(self, source: Path, config: ProfileConfig) -> Manifest:
        """
        Encode ``source`` into n shards plus a manifest.

        Each stripe carries info_length symbols of bits_per_symbol payload bits; the last
        stripe is zero-padded and the manifest records the true length.

        Raises:
            StorageError: If the input cannot be read or the outputs written.
        """
        try:
            data = source.read_bytes()
        except OSError as e:
            self.logger.error(f"Failed to read {source}: {e}")
            raise StorageError(f"Failed to read {source}: {e}") from e

        code = build_code(config)
        field = code.field_spec
        bits = field.bits_per_symbol
        per_stripe = code.info_length
        stripes = max(1, math.ceil(len(data) * 8 / (bits * per_stripe)))
        padding = stripes * per_stripe * bits - len(data) * 8
        if padding:
            self.logger.warning(f"Zero-padding the last stripe with {padding} bits")
        values = pack_bits(data, bits, stripes * per_stripe).reshape(stripes, per_stripe)

        profile = code.profile
        nodes = np.zeros((profile.n, stripes, profile.sub_packetization, code.block_size), dtype=np.int64)
        gf = field.galois_field()
        for s in range(stripes):
            arr = code.encode(gf(values[s]))
            nodes[:, s] = arr.symbols.view(np.ndarray).transpose(1, 0, 2)

        self.directory.mkdir(parents=True, exist_ok=True)
        digests = {}
        for i in range(profile.n):
            meta = ShardMeta(
                config=config,
                field=field,
                node=i,
                block_size=code.block_size,
                stripes=stripes,
                original_length=len(data),
                bits_per_symbol=bits,
            )
            digests[shard_name(i)] = write_shard(self.directory / shard_name(i), meta, nodes[i])
        manifest = Manifest(
            config=config,
            field=field,
            original_length=len(data),
            stripes=stripes,
            bits_per_symbol=bits,
            block_size=code.block_size,
            shards=digests,
        )
        write_manifest(self.directory, manifest)
        self.logger.info(
            f"Encoded {len(data)} bytes into {profile.n} {config.family.value} shards "
            f"({stripes} stripes over {field.label}) in {self.directory}"
        )
        return manifest

    def load(self, paths: Sequence[Path]) -> list[Shard]:
        """
        Read shards, check them against the manifest next to them and against each other.

        Raises:
            ShardChecksumError: If a file digest disagrees with the manifest.
            ShardFormatError: If the shards describe different encodings or repeat a node.
        """
        shards: list[Shard] = []
        manifests: dict[Path, Manifest | None] = {}
        for path in paths:
            parent = path.parent
            if parent not in manifests:
                manifests[parent] = read_manifest(parent)
            manifest = manifests[parent]
            if manifest is not None:
                expected = manifest.shards.get(path.name)
                if expected is not None and expected != file_md5(path):
                    raise ShardChecksumError(f"{path.name}: digest differs from the manifest")
            shards.append(read_shard(path))
        if not shards:
            raise NoSatisfiableLayerError("No shards supplied")
        first = shards[0].meta
        for shard in shards[1:]:
            meta = shard.meta
            if (meta.config, meta.field, meta.stripes, meta.original_length) != (
                first.config,
                first.field,
                first.stripes,
                first.original_length,
            ):
                raise ShardFormatError(f"Shard of node {meta.node} belongs to a different encoding")
        nodes = [shard.meta.node for shard in shards]
        if len(set(nodes)) != len(nodes):
            raise ShardFormatError(f"Duplicate nodes among shards: {sorted(nodes)}")
        self.logger.debug(f"Loaded {len(shards)} shards for nodes {sorted(nodes)}")
        return sorted(shards, key=lambda shard: shard.meta.node)

    @staticmethod
    def _code_for(shard: Shard) -> StorageCode:
        code = build_code(shard.meta.config)
        if code.field_spec != shard.meta.field:
            raise ManifestError(
                f"Shards were written over {shard.meta.field.label}, the config builds {code.field_spec.label}"
            )
        return code

    @staticmethod
    def _rows(shards: Sequence[Shard], stripe: int, rows: int) -> NDArray[np.int64]:
        """(rows, len(shards), block_size) symbols of one stripe."""
        return np.stack([shard.symbols[stripe, :rows].view(np.ndarray) for shard in shards], axis=1)

    def decode(self, paths: Sequence[Path], layer: int | None = None) -> tuple[bytes, DecodeReport]:
        """
        Recover the original bytes from a subset of shards.

        Raises:
            NoSatisfiableLayerError: If too few shards are given for every layer.
            InsufficientNodesError: If the requested layer needs more shards.
        """
        shards = self.load(paths)
        meta = shards[0].meta
        code = self._code_for(shards[0])
        profile = code.profile
        j = select_layer(profile, len(shards), layer)
        spec = profile.layers[j - 1]
        used = shards[: spec.recovery]
        nodes = [shard.meta.node for shard in used]
        gf = code.field_spec.galois_field()
        values = np.zeros((meta.stripes, code.info_length), dtype=np.int64)
        for s in range(meta.stripes):
            info = code.decode_nodes(nodes, gf(self._rows(used, s, spec.rows)), j)
            values[s] = info.view(np.ndarray).reshape(-1)
        data = unpack_bits(values, meta.bits_per_symbol, meta.original_length)
        report = DecodeReport(
            layer=j,
            recovery=spec.recovery,
            rows=spec.rows,
            nodes=tuple(nodes),
            symbols_read=spec.recovery * spec.rows * code.block_size * meta.stripes,
            stripes=meta.stripes,
            length=len(data),
        )
        self.logger.info(
            f"Decoded {len(data)} bytes with layer {j} (R={spec.recovery}, l={spec.rows}) "
            f"from nodes {list(nodes)}, {report.symbols_read} symbols read"
        )
        return data, report

    def repair(self, node: int, paths: Sequence[Path] | None = None) -> RepairOutcome:
        """
        Rebuild the shard of ``node`` from the others and write it into the store directory.

        LRC repairs locally, MSR with regenerating repair, MDS and PMDS by decoding and
        re-encoding.

        Raises:
            RepairError: If a required helper is unavailable.
        """
        candidates = shard_paths(paths or [self.directory])
        candidates = [p for p in candidates if p.name != shard_name(node)]
        shards = [shard for shard in self.load(candidates) if shard.meta.node != node]
        meta = shards[0].meta
        code = self._code_for(shards[0])
        profile = code.profile
        if not 0 <= node < profile.n:
            raise IndexRangeError(f"Node {node} outside 0..{profile.n - 1}")
        available = [shard.meta.node for shard in shards]
        missing = sorted(set(range(profile.n)) - set(available) - {node})
        gf = code.field_spec.galois_field()
        size = code.block_size
        rebuilt = np.zeros((meta.stripes, profile.sub_packetization, size), dtype=np.int64)
        bandwidth = 0
        optimal: int | None = None
        helpers: tuple[int, ...]

        if isinstance(code, FlexLrcCode | FlexMsrCode):
            for s in range(meta.stripes):
                full = np.zeros((profile.sub_packetization, profile.n, size), dtype=np.int64)
                full[:, available] = self._rows(shards, s, profile.sub_packetization)
                arr = CodewordArray(profile=profile, symbols=gf(full))
                if isinstance(code, FlexLrcCode):
                    rebuilt[s] = code.repair(arr, node, missing).view(np.ndarray)
                    helpers = tuple(code.layout.peers(node))
                    bandwidth += len(helpers) * profile.sub_packetization * size
                else:
                    repaired, report = code.repair(arr, node, missing)
                    rebuilt[s] = repaired.view(np.ndarray)
                    helpers = report.helpers
                    bandwidth += report.bandwidth
                    optimal = (optimal or 0) + report.optimal_bandwidth
            method = "local" if isinstance(code, FlexLrcCode) else "regenerating"
        else:
            j = select_layer(profile, len(shards))
            spec = profile.layers[j - 1]
            used = shards[: spec.recovery]
            helpers = tuple(shard.meta.node for shard in used)
            for s in range(meta.stripes):
                info = code.decode_nodes(list(helpers), gf(self._rows(used, s, spec.rows)), j)
                arr = code.encode(info.reshape(-1))
                rebuilt[s] = arr.node(node).view(np.ndarray)
                bandwidth += spec.recovery * spec.rows * size
            method = "decode-reencode"

        self.directory.mkdir(parents=True, exist_ok=True)
        digest = write_shard(self.directory / shard_name(node), meta.model_copy(update={"node": node}), rebuilt)
        manifest = read_manifest(self.directory)
        if manifest is not None:
            write_manifest(
                self.directory, manifest.model_copy(update={"shards": {**manifest.shards, shard_name(node): digest}})
            )
        outcome = RepairOutcome(
            node=node,
            family=profile.family,
            method=method,
            helpers=helpers,
            bandwidth=bandwidth,
            naive_bandwidth=naive_repair_bandwidth(profile, size) * meta.stripes,
            optimal_bandwidth=optimal,
            stripes=meta.stripes,
        )
        self.logger.info(
            f"Repaired node {node} ({method}) from {len(helpers)} helpers: "
            f"{outcome.bandwidth} symbols vs naive {outcome.naive_bandwidth}"
        )
        if profile.family is CodeFamily.MSR and optimal is not None and bandwidth != optimal:
            self.logger.warning(f"Repair bandwidth {bandwidth} differs from the MSR bound {optimal}")
        return outcome
