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
Flexible MSR vector codes defined row by row through block parity checks.

Row (j, x) stores n blocks of L symbols and satisfies H_{j,x} c = 0 where block
column i is [h_{0,i}; beta h_{1,i}; ...; beta^(r-1) h_{r-1,i}] for the row's
coefficient beta. Extra-parity columns copy the column of the information slot
they become, coefficient included, so repair of a lower row hands its helper
transmissions up to the rows above.
"""

from collections.abc import Callable, Collection, Sequence

from galois import FieldArray

from coreason_flexcode.exceptions import (
    IndexRangeError,
    ProfileError,
    RepairError,
    SingularSystemError,
)
from coreason_flexcode.field import FieldSpec
from coreason_flexcode.layered import (
    CodeFamily,
    CodewordArray,
    FlexProfile,
    LayerPlan,
    layered_decode,
    layered_encode,
    validate_profile,
)
from coreason_flexcode.linalg import hstack, row_echelon, solve_linear
from coreason_flexcode.msr.models import CoefficientTable, RepairMatrices, RepairReport, YeBargSpec
from coreason_flexcode.utils.logger import logger

# (layer j, row x, node i) -> coefficient multiplying the node's column in that row
CoefficientFn = Callable[[int, int, int], int]


class ParityCheckRowCode:
    """
    Block code {c : sum_p H_p c_p = 0} with information on the first ``dimension`` positions.

    Each column H_p is an (rows x L) block; symbols are length-L vectors.
    """

    def __init__(self, columns: Sequence[FieldArray], dimension: int) -> None:
        if dimension >= len(columns):
            raise IndexRangeError(f"Dimension {dimension} leaves no parity among {len(columns)} columns")
        self.columns = list(columns)
        self._dimension = dimension
        self.block_size = int(columns[0].shape[1])

    @property
    def length(self) -> int:
        return len(self.columns)

    @property
    def dimension(self) -> int:
        return self._dimension

    def parity_check(self) -> FieldArray:
        return hstack(self.columns)

    def complete(self, positions: Sequence[int], symbols: FieldArray) -> FieldArray:
        """Solve the unknown blocks from the known ones; returns all (length, L) blocks."""
        field = type(symbols)
        size = self.block_size
        full = field.Zeros((self.length, size))
        full[list(positions)] = symbols
        known = set(positions)
        unknown = [p for p in range(self.length) if p not in known]
        if not unknown:
            return full
        known_part = hstack([self.columns[p] for p in positions]) @ symbols.reshape(-1)
        solved = solve_linear(hstack([self.columns[p] for p in unknown]), -known_part)
        full[unknown] = solved.reshape(len(unknown), size)
        return full

    def encode(self, info: FieldArray) -> FieldArray:
        if info.shape != (self.dimension, self.block_size):
            raise IndexRangeError(f"Expected ({self.dimension}, {self.block_size}) information, got {info.shape}")
        return self.complete(list(range(self.dimension)), info)

    def decode(self, positions: Sequence[int], symbols: FieldArray) -> FieldArray:
        if any(not 0 <= p < self.length for p in positions):
            raise IndexRangeError(f"Positions must lie in 0..{self.length - 1}")
        return self.complete(positions, symbols)[: self.dimension]


def naive_repair_bandwidth(profile: FlexProfile, block_size: int) -> int:
    """Symbols read when a node is rebuilt by decoding everything: l k L."""
    return profile.sub_packetization * profile.k * block_size


class FlexMsrCode:
    """
    Flexible MSR code assembled from per-node base blocks, row coefficients and repair matrices.

    ``node_blocks[i][u]`` is h_{u,i}; the column of node i in row (j, x) scales
    block u by coefficient(j, x, i)^u.
    """

    def __init__(
        self,
        profile: FlexProfile,
        field: FieldSpec,
        node_blocks: Sequence[Sequence[FieldArray]],
        coefficient: CoefficientFn,
        repair_matrices: RepairMatrices,
        spec: YeBargSpec | None = None,
        coefficients: CoefficientTable | None = None,
    ) -> None:
        if profile.family is not CodeFamily.MSR:
            raise ProfileError(f"Expected an MSR profile, got {profile.family.value}")
        self.logger = logger.bind(agent="FlexMsrCode")
        self.plan: LayerPlan = validate_profile(profile)
        self.field_spec = field
        self.field = field.galois_field()
        self.r = profile.n - profile.k
        if len(node_blocks) != profile.n or any(len(blocks) != self.r for blocks in node_blocks):
            raise IndexRangeError(f"Expected {self.r} base blocks for each of {profile.n} nodes")
        if len(repair_matrices) != profile.n:
            raise IndexRangeError(f"Expected {profile.n} repair matrices, got {len(repair_matrices)}")
        self.node_blocks = [list(blocks) for blocks in node_blocks]
        self.block_size = int(node_blocks[0][0].shape[1])
        self.coefficient = coefficient
        self.repair_matrices = repair_matrices
        self.spec = spec
        self.coefficients = coefficients
        self._columns: dict[tuple[int, int, int], FieldArray] = {}
        self._row_codes: dict[tuple[int, int], ParityCheckRowCode] = {}

    @property
    def profile(self) -> FlexProfile:
        return self.plan.profile

    @property
    def info_length(self) -> int:
        """Information symbols per array: k l L."""
        return self.profile.info_symbols * self.block_size

    def column(self, j: int, x: int, i: int) -> FieldArray:
        """Block column (rL x L) of node i in row x of layer j."""
        key = (j, x, i)
        if key not in self._columns:
            beta = self.field(self.coefficient(j, x, i))
            blocks = [self.node_blocks[i][u] * beta**u for u in range(self.r)]
            column = self.field.Zeros((self.r * self.block_size, self.block_size))
            for u, block in enumerate(blocks):
                column[u * self.block_size : (u + 1) * self.block_size] = block
            self._columns[key] = column
        return self._columns[key]

    def row_slots(self, j: int, x: int) -> list[tuple[int, int, int]]:
        """(layer, row, node) owning each column of row (j, x): n stored, then the extras' targets."""
        slots = [(j, x, i) for i in range(self.profile.n)]
        for y in range(1, self.plan.layer(j).extra_count + 1):
            ref = self.plan.target_of(j, x, y)
            slots.append((ref.target_layer, ref.target_row, ref.target_index - 1))
        return slots

    def row_columns(self, j: int, x: int) -> list[FieldArray]:
        return [self.column(*slot) for slot in self.row_slots(j, x)]

    def row_code(self, j: int, x: int) -> ParityCheckRowCode:
        if (j, x) not in self._row_codes:
            self._row_codes[(j, x)] = ParityCheckRowCode(self.row_columns(j, x), self.plan.layer(j).dimension)
        return self._row_codes[(j, x)]

    def encode(self, info: FieldArray) -> CodewordArray:
        blocks = info.reshape(self.profile.info_symbols, self.block_size)
        return layered_encode(blocks, self.plan, self.row_code)

    def decode(self, cols: Sequence[int], rows: FieldArray, j: int) -> FieldArray:
        """Information blocks (k l, L) from the first l_j rows of k_j nodes."""
        return layered_decode(cols, rows, j, self.plan, self.row_code)

    def decode_nodes(self, cols: Sequence[int], rows: FieldArray, j: int) -> FieldArray:
        return self.decode(cols, rows, j)

    def repair(self, arr: CodewordArray, failed: int, missing: Collection[int] = ()) -> tuple[FieldArray, RepairReport]:
        return msr_repair(arr, failed, self, missing)


def msr_encode(info: FieldArray, code: FlexMsrCode) -> CodewordArray:
    """Top-down layered encoding; each row solves its r parity blocks from its parity checks."""
    return code.encode(info)


def msr_decode(cols: Sequence[int], rows: FieldArray, j: int, code: FlexMsrCode) -> FieldArray:
    """Bottom-up layered decoding from k_j nodes reading their first l_j rows."""
    return code.decode(cols, rows, j)


def msr_repair(
    arr: CodewordArray,
    failed: int,
    code: FlexMsrCode,
    missing: Collection[int] = (),
) -> tuple[FieldArray, RepairReport]:
    """
    Rebuild node ``failed`` with L/r symbols per helper per row.

    Rows are processed bottom-up. Helper i sends a basis of the row space of
    S_* h_i applied to its block; the receiver expands it back to S_* h_i c_i.
    Extra-parity columns reuse what the target row's helper already sent, or,
    when the target is the failed node itself, its freshly repaired block.

    Returns:
        The (l, L) contents of the failed node and the bandwidth report.

    Raises:
        RepairError: If another node is unavailable or a repair system is singular.
    """
    profile = code.profile
    n = profile.n
    if not 0 <= failed < n:
        raise IndexRangeError(f"Node {failed} outside 0..{n - 1}")
    others = sorted(set(missing) - {failed})
    if others:
        raise RepairError(f"Single-node repair needs every other node, but {others} are unavailable")

    field = code.field
    size = code.block_size
    select = code.repair_matrices[failed]
    plan = code.plan
    sent: dict[tuple[int, int, int], FieldArray] = {}
    repaired = field.Zeros((profile.sub_packetization, size))
    bandwidth = 0

    for geometry in reversed(plan.layers):
        j = geometry.index
        for x in range(1, geometry.row_count + 1):
            row = geometry.row_start + x - 1
            total = field.Zeros(size)
            for i in range(n):
                if i == failed:
                    continue
                reduced = select @ code.column(j, x, i)
                basis, pivots = row_echelon(reduced)
                transmitted = basis[: len(pivots)] @ arr.symbols[row, i]
                bandwidth += len(pivots)
                term = reduced[:, pivots] @ transmitted
                sent[(j, x, i)] = term
                total += term
            for y in range(1, geometry.extra_count + 1):
                ref = plan.target_of(j, x, y)
                node = ref.target_index - 1
                if node == failed:
                    target_row = plan.layer(ref.target_layer).row_start + ref.target_row - 1
                    total += select @ code.column(ref.target_layer, ref.target_row, node) @ repaired[target_row]
                else:
                    total += sent[(ref.target_layer, ref.target_row, node)]
            try:
                repaired[row] = solve_linear(select @ code.column(j, x, failed), -total)
            except SingularSystemError as exc:
                raise RepairError(f"Repair of node {failed} failed in layer {j} row {x}: {exc}") from exc
        logger.debug(f"Repaired layer {j} of node {failed}")

    report = RepairReport(
        node=failed,
        helpers=tuple(i for i in range(n) if i != failed),
        rows=profile.sub_packetization,
        bandwidth=bandwidth,
        optimal_bandwidth=profile.sub_packetization * (n - 1) * size // code.r,
        naive_bandwidth=naive_repair_bandwidth(profile, size),
    )
    logger.info(f"Node {failed} repaired with {report.bandwidth} symbols (naive {report.naive_bandwidth})")
    return repaired, report
