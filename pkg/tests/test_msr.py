# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Tests for flexible MSR codes: the four-node fixture and the diagonal construction."""

import itertools

import numpy as np
import pytest

from coreason_flexcode.exceptions import (
    CoefficientError,
    FieldTooSmallError,
    IndexRangeError,
    InnerDecodeError,
    ParameterCapError,
    ProfileDivisibilityError,
    ProfileError,
    RepairError,
)
from coreason_flexcode.field import canonical_field
from coreason_flexcode.layered import FlexProfile
from coreason_flexcode.msr import (
    FOUR_NODE_MSR_PROFILE,
    CoefficientStrategy,
    FlexMsrCode,
    ParityCheckRowCode,
    RepairMatrices,
    assign_coefficients,
    audit_msr,
    build_msr_code,
    build_yebarg,
    check_msr_caps,
    choose_msr_fields,
    four_node_msr_code,
    msr_decode,
    msr_encode,
    msr_repair,
    naive_repair_bandwidth,
    repair_selector,
    required_coefficients,
)


@pytest.fixture(name="literal")
def literal_code() -> FlexMsrCode:
    return four_node_msr_code()


@pytest.fixture(name="diagonal")
def diagonal_code() -> FlexMsrCode:
    return build_msr_code(FOUR_NODE_MSR_PROFILE)


class TestFourNodeFixture:
    """Tests for the GF(4) code with literal parity checks and repair matrices."""

    def test_shape(self, literal: FlexMsrCode) -> None:
        assert literal.block_size == 2
        assert literal.r == 2
        assert literal.info_length == 12
        assert len(literal.row_columns(1, 1)) == 5
        assert len(literal.row_columns(2, 1)) == 4

    def test_audit_reports_what_the_matrices_miss(self, literal: FlexMsrCode) -> None:
        """
        Coefficient distinctness holds, but the beta-scaled columns break two things:
        nodes 2 and 1 cannot both be lost next to an extra parity in the upper rows,
        and nodes 3 and 4 see full-rank helper columns in the last row.
        """
        report = audit_msr(literal)
        assert report.mds_vandermonde is None
        assert report.condition_one
        assert not report.mds_exhaustive
        assert not report.rank_condition
        assert not report.passed
        erasures = [v for v in report.violations if "not recoverable" in v]
        assert erasures == [
            "Row (1,1): columns [2, 5] are not recoverable",
            "Row (1,2): columns [1, 5] are not recoverable",
        ]
        ranks = {v for v in report.violations if " S_" in v}
        assert ranks == {
            "Row (2,1) S_3 h_1: rank 2, expected 1",
            "Row (2,1) S_3 h_2: rank 2, expected 1",
            "Row (2,1) S_4 h_1: rank 2, expected 1",
            "Row (2,1) S_4 h_2: rank 2, expected 1",
        }

    def test_layer_two_decodes_from_any_pair(self, literal: FlexMsrCode) -> None:
        info = literal.field.Random((6, 2), seed=8)
        array = msr_encode(info, literal)
        for cols in itertools.combinations(range(4), 2):
            assert np.array_equal(msr_decode(cols, array.read(cols, 3), 2, literal), info)

    def test_layer_one_recovery_sets(self, literal: FlexMsrCode) -> None:
        info = literal.field.Random((6, 2), seed=8)
        array = literal.encode(info)
        for cols in ([0, 1, 2], [0, 1, 3]):
            assert np.array_equal(literal.decode(cols, array.read(cols, 2), 1), info)
        with pytest.raises(InnerDecodeError) as exc:
            literal.decode([0, 2, 3], array.read([0, 2, 3], 2), 1)
        assert (exc.value.layer, exc.value.row) == (1, 1)
        with pytest.raises(InnerDecodeError) as exc:
            literal.decode([1, 2, 3], array.read([1, 2, 3], 2), 1)
        assert (exc.value.layer, exc.value.row) == (1, 2)

    @pytest.mark.parametrize("node, bandwidth", [(0, 9), (1, 9), (2, 11), (3, 11)])
    def test_repair(self, literal: FlexMsrCode, node: int, bandwidth: int) -> None:
        """Nodes 1 and 2 meet the cut-set bound of 9 symbols against 12 for decoding."""
        array = literal.encode(literal.field.Random(12, seed=21))
        repaired, report = literal.repair(array, node)
        assert np.array_equal(repaired, array.node(node))
        assert report.bandwidth == bandwidth
        assert report.optimal_bandwidth == 9
        assert report.naive_bandwidth == 12
        assert report.helpers == tuple(i for i in range(4) if i != node)

    def test_row_code_checks(self, literal: FlexMsrCode) -> None:
        columns = literal.row_columns(2, 1)
        with pytest.raises(IndexRangeError):
            ParityCheckRowCode(columns, 4)
        row = ParityCheckRowCode(columns, 2)
        info = literal.field([[1, 2], [3, 0]])
        blocks = row.encode(info)
        assert np.array_equal(row.decode([0, 1, 2, 3], blocks), info)
        with pytest.raises(IndexRangeError):
            row.encode(literal.field.Zeros((3, 2)))
        with pytest.raises(IndexRangeError):
            row.decode([0, 4], blocks[:2])

    def test_constructor_checks(self, literal: FlexMsrCode) -> None:
        parts = (literal.field_spec, literal.node_blocks, literal.coefficient)
        with pytest.raises(ProfileError):
            FlexMsrCode(FlexProfile.from_pairs(4, [(3, 2), (2, 3)]), *parts, literal.repair_matrices)
        with pytest.raises(IndexRangeError):
            FlexMsrCode(
                FOUR_NODE_MSR_PROFILE,
                literal.field_spec,
                literal.node_blocks[:3],
                literal.coefficient,
                literal.repair_matrices,
            )
        with pytest.raises(IndexRangeError):
            FlexMsrCode(
                FOUR_NODE_MSR_PROFILE, *parts, RepairMatrices(matrices=literal.repair_matrices.matrices[:3])
            )

    def test_singular_repair_matrix(self, literal: FlexMsrCode) -> None:
        """A selector repeating one row leaves the failed node's system rank deficient."""
        gf = literal.field
        repeated = RepairMatrices(matrices=tuple(gf([[1, 0, 0, 0], [1, 0, 0, 0]]) for _ in range(4)))
        code = FlexMsrCode(
            FOUR_NODE_MSR_PROFILE, literal.field_spec, literal.node_blocks, literal.coefficient, repeated
        )
        array = code.encode(gf.Random(12, seed=3))
        with pytest.raises(RepairError):
            msr_repair(array, 3, code)


class TestDiagonalConstruction:
    """Tests for the diagonal parity-check construction with coset coefficients."""

    def test_fields(self) -> None:
        """|E| > r n = 8 gives GF(16); two coefficients need GF(256)."""
        base, ambient = choose_msr_fields(4, 2, 2)
        assert base.label == "GF(2^4)"
        assert ambient.label == "GF(2^8)"
        assert choose_msr_fields(4, 2, 1)[1] == base

    def test_coefficient_counts(self) -> None:
        assert required_coefficients(FOUR_NODE_MSR_PROFILE, CoefficientStrategy.PER_LAYER) == 2
        assert required_coefficients(FOUR_NODE_MSR_PROFILE, CoefficientStrategy.PER_ROW) == 3

    def test_assignment(self, diagonal: FlexMsrCode) -> None:
        table = diagonal.coefficients
        assert table is not None
        assert table.assignment == ((0, 0), (1,))
        base, ambient = choose_msr_fields(4, 2, 3)
        spec, _, _ = build_yebarg(4, 2, base, ambient, 3)
        per_row = assign_coefficients(FOUR_NODE_MSR_PROFILE, spec, CoefficientStrategy.PER_ROW)
        assert per_row.assignment == ((0, 1), (2,))

    def test_assignment_needs_enough_cosets(self) -> None:
        base, ambient = choose_msr_fields(4, 2, 1)
        spec, _, _ = build_yebarg(4, 2, base, ambient, 1)
        with pytest.raises(CoefficientError):
            assign_coefficients(FOUR_NODE_MSR_PROFILE, spec, CoefficientStrategy.PER_ROW)

    def test_base_field_too_small(self) -> None:
        with pytest.raises(FieldTooSmallError):
            build_yebarg(4, 2, canonical_field(2, 2), canonical_field(2, 4))

    def test_selector(self) -> None:
        gf = canonical_field(2).galois_field()
        selector = repair_selector(2, 3, 1, gf)
        assert selector.shape == (4, 8)
        ints = np.asarray(selector.view(np.ndarray))
        assert np.all(ints.sum(axis=0) == 1)
        assert np.all(ints.sum(axis=1) == 2)

    def test_row_codewords_satisfy_parity_checks(self, diagonal: FlexMsrCode) -> None:
        for geometry in diagonal.plan.layers:
            row = diagonal.row_code(geometry.index, 1)
            blocks = row.encode(diagonal.field.Random((row.dimension, 16), seed=geometry.index))
            assert blocks.shape == (row.length, 16)
            assert not np.any(row.parity_check() @ blocks.reshape(-1))

    def test_audit_passes(self, diagonal: FlexMsrCode) -> None:
        report = audit_msr(diagonal)
        assert report.passed
        assert report.mds_vandermonde is True
        assert report.violations == ()

    def test_audit_catches_repeated_coefficients(self, diagonal: FlexMsrCode) -> None:
        """A constant coefficient gives an extra parity the same column as a stored block of its node."""
        flat = FlexMsrCode(
            FOUR_NODE_MSR_PROFILE,
            diagonal.field_spec,
            diagonal.node_blocks,
            lambda j, x, i: 1,
            diagonal.repair_matrices,
            spec=diagonal.spec,
        )
        report = audit_msr(flat)
        assert report.condition_one is False
        assert report.mds_vandermonde is False
        assert not report.passed
        assert any("repeats coefficient 1" in v for v in report.violations)

    def test_every_recovery_set(self, diagonal: FlexMsrCode) -> None:
        info = diagonal.field.Random((6, 16), seed=13)
        array = diagonal.encode(info)
        for geometry in diagonal.plan.layers:
            for cols in itertools.combinations(range(4), geometry.recovery):
                decoded = diagonal.decode(cols, array.read(cols, geometry.row_stop), geometry.index)
                assert np.array_equal(decoded, info)

    @pytest.mark.parametrize("node", range(4))
    def test_optimal_repair(self, diagonal: FlexMsrCode, node: int) -> None:
        """Each helper sends L/r = 8 symbols per row: 3 * 3 * 8 = 72 against 96."""
        array = diagonal.encode(diagonal.field.Random((6, 16), seed=node))
        repaired, report = msr_repair(array, node, diagonal)
        assert np.array_equal(repaired, array.node(node))
        assert report.bandwidth == report.optimal_bandwidth == 72
        assert report.naive_bandwidth == naive_repair_bandwidth(FOUR_NODE_MSR_PROFILE, 16) == 96

    def test_repair_needs_all_helpers(self, diagonal: FlexMsrCode) -> None:
        array = diagonal.encode(diagonal.field.Random((6, 16), seed=1))
        with pytest.raises(RepairError):
            msr_repair(array, 0, diagonal, missing=[0, 2])
        with pytest.raises(IndexRangeError):
            msr_repair(array, 4, diagonal)


class TestCaps:
    """Tests for the supported MSR parameter range."""

    def test_caps(self) -> None:
        check_msr_caps(5, 2)
        with pytest.raises(ParameterCapError):
            check_msr_caps(6, 4)
        with pytest.raises(ParameterCapError):
            check_msr_caps(5, 1)
        with pytest.raises(ProfileDivisibilityError):
            check_msr_caps(3, 3)
