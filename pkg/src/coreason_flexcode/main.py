# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Entry point for the flexcode command-line tool."""

import argparse
import sys
from pathlib import Path
from typing import TypeVar

import polars as pl
from pydantic import BaseModel, ValidationError

from coreason_flexcode.config import FlexConfig
from coreason_flexcode.exceptions import FlexCodeError, StorageError
from coreason_flexcode.latency import (
    AccessProfile,
    ComputeResult,
    compute_table,
    latency_sweep,
    simulate_coded_compute,
    sweep_grid,
)
from coreason_flexcode.storage import (
    AuditSummary,
    DecodeReport,
    LatencyConfig,
    Manifest,
    ProfileConfig,
    RepairOutcome,
    ShardStore,
    audit_code,
    build_code,
    shard_paths,
)
from coreason_flexcode.utils.logger import logger

ModelT = TypeVar("ModelT", bound=BaseModel)


def parse_args(args: list[str] | None = None) -> argparse.Namespace:
    """Parse command-line arguments."""
    parser = argparse.ArgumentParser(prog="flexcode", description="Flexible storage codes")
    commands = parser.add_subparsers(dest="command", required=True)

    encode = commands.add_parser("encode", help="Encode a file into per-node shards")
    encode.add_argument("input", type=Path, help="File to encode")
    encode.add_argument("--profile", type=Path, required=True, help="Profile config (JSON)")
    encode.add_argument("--out-dir", type=Path, default=FlexConfig.DEFAULT_OUT_DIR, help="Shard directory")

    decode = commands.add_parser("decode", help="Recover a file from a subset of shards")
    decode.add_argument("shards", type=Path, nargs="+", help="Shard files or directories")
    decode.add_argument("--layer", type=int, default=None, help="Layer j to decode with (default: fewest symbols)")
    decode.add_argument("--output", type=Path, required=True, help="Destination of the recovered bytes")

    repair = commands.add_parser("repair", help="Rebuild the shard of one node")
    repair.add_argument("node", type=int, help="0-based node index")
    repair.add_argument("--out-dir", type=Path, default=FlexConfig.DEFAULT_OUT_DIR, help="Shard directory")

    audit = commands.add_parser("audit", help="Check the properties of a configured code")
    audit.add_argument("--profile", type=Path, required=True, help="Profile config (JSON)")

    latency = commands.add_parser("latency", help="Sweep expected access latency over transfer times")
    latency.add_argument("--profile", type=Path, default=None, help="Latency config (JSON)")
    latency.add_argument("--seed", type=int, default=FlexConfig.DEFAULT_SEED, help="Monte Carlo seed")
    latency.add_argument("--output", type=Path, default=None, help="CSV destination (default: stdout)")
    return parser.parse_args(args)


def load_config(path: Path, model: type[ModelT]) -> ModelT:
    """
    Load a JSON config document.

    Raises:
        StorageError: If the file cannot be read.
        ValidationError: If the document does not match ``model``.
    """
    try:
        text = path.read_text(encoding=FlexConfig.ENCODING)
    except OSError as e:
        raise StorageError(f"Failed to read config {path}: {e}") from e
    return model.model_validate_json(text)


@logger.catch(reraise=True)
def run_encode(source: Path, profile: Path, out_dir: Path) -> Manifest:
    config = load_config(profile, ProfileConfig)
    return ShardStore(out_dir).encode_file(source, config)


@logger.catch(reraise=True)
def run_decode(shards: list[Path], layer: int | None, output: Path) -> DecodeReport:
    """Decode the given shards and write the recovered bytes to ``output``."""
    paths = shard_paths(shards)
    store = ShardStore(paths[0].parent if paths else FlexConfig.DEFAULT_OUT_DIR)
    data, report = store.decode(paths, layer)
    try:
        output.write_bytes(data)
    except OSError as e:
        raise StorageError(f"Failed to write {output}: {e}") from e
    sys.stdout.write(report.model_dump_json(indent=2) + "\n")
    return report


@logger.catch(reraise=True)
def run_repair(node: int, out_dir: Path) -> RepairOutcome:
    outcome = ShardStore(out_dir).repair(node)
    sys.stdout.write(outcome.model_dump_json(indent=2) + "\n")
    return outcome


@logger.catch(reraise=True)
def run_audit(profile: Path) -> AuditSummary:
    summary = audit_code(build_code(load_config(profile, ProfileConfig)))
    sys.stdout.write(summary.model_dump_json(indent=2) + "\n")
    return summary


@logger.catch(reraise=True)
def run_latency(profile: Path | None, seed: int, output: Path | None) -> tuple[pl.DataFrame, list[ComputeResult]]:
    """
    Run the latency sweep and, when configured, the coded-compute simulation.

    Args:
        profile: Latency config; defaults reproduce the 16-node disk scenario.
        seed: Monte Carlo seed, recorded in every simulated result.
        output: Sweep CSV path, or None for stdout. Compute results go to
            ``<stem>_compute.csv`` beside it, or follow the sweep on stdout after a blank line.
    """
    config = LatencyConfig() if profile is None else load_config(profile, LatencyConfig)
    access = AccessProfile(recovery=config.recovery, rows=config.rows)
    frame = latency_sweep(
        access,
        config.n,
        config.t_pos,
        sweep_grid(config.t_trans_max, config.points),
        mc_trials=config.mc_trials,
        seed=seed,
    )
    if output is None:
        sys.stdout.write(frame.write_csv())
    else:
        frame.write_csv(output)
        logger.info(f"Wrote {frame.height} sweep rows to {output}")

    results: list[ComputeResult] = []
    if config.compute is not None:
        compute = config.compute
        compute_access = AccessProfile(recovery=compute.recovery, rows=compute.rows)
        for distribution in compute.distributions:
            results.append(
                simulate_coded_compute(
                    compute_access, compute.n, distribution, compute.task_time, compute.trials, seed
                )
            )
        table = compute_table(results)
        if output is None:
            sys.stdout.write("\n" + table.write_csv())
        else:
            compute_path = output.with_name(f"{output.stem}_compute.csv")
            table.write_csv(compute_path)
            logger.info(f"Wrote {table.height} coded-compute rows to {compute_path}")
    return frame, results


def main(args: list[str] | None = None) -> None:
    """Main entry point for the flexcode CLI."""
    parsed = parse_args(args)

    logger.info(f"Starting flexcode {parsed.command}")

    try:
        if parsed.command == "encode":
            run_encode(parsed.input, parsed.profile, parsed.out_dir)
        elif parsed.command == "decode":
            run_decode(parsed.shards, parsed.layer, parsed.output)
        elif parsed.command == "repair":
            run_repair(parsed.node, parsed.out_dir)
        elif parsed.command == "audit":
            if not run_audit(parsed.profile).passed:
                logger.error("Audit found violations")
                sys.exit(FlexConfig.EXIT_VALIDATION)
        else:
            run_latency(parsed.profile, parsed.seed, parsed.output)
    except FlexCodeError as e:
        logger.error(f"{parsed.command} failed: {e}")
        sys.exit(e.exit_code)
    except ValidationError as e:
        logger.error(f"Invalid configuration: {e}")
        sys.exit(FlexConfig.EXIT_VALIDATION)
    except Exception as e:
        logger.error(f"{parsed.command} failed unexpectedly: {e}")
        sys.exit(FlexConfig.EXIT_UNEXPECTED)


if __name__ == "__main__":  # pragma: no cover
    main()
