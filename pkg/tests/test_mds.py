# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Tests for flexible MDS codes and the layered codec."""

import itertools

import numpy as np
import pytest

from coreason_flexcode.exceptions import (
    FieldTooSmallError,
    IndexRangeError,
    InnerDecodeError,
    InsufficientNodesError,
    ProfileError,
)
from coreason_flexcode.field import canonical_field
from coreason_flexcode.layered import CodeFamily, FlexProfile, codeword_rows_equal
from coreason_flexcode.mds import (
    FOUR_NODE_PROFILE,
    FlexMdsCode,
    RsRowCode,
    SystematicRowCode,
    build_mds_code,
    flex_mds_decode,
    flex_mds_encode,
    four_node_reference_code,
    mds_field_for,
    rs_encode_row,
    rs_points,
)

THREE_LAYER = FlexProfile.from_pairs(6, [(4, 3), (3, 4), (2, 6)])


def _assert_every_subset_decodes(code: FlexMdsCode) -> None:
    profile = code.profile
    info = code.field.Random(profile.info_symbols, seed=7)
    array = code.encode(info)
    for geometry in code.plan.layers:
        for cols in itertools.combinations(range(profile.n), geometry.recovery):
            rows = array.read(cols, geometry.row_stop)
            assert np.array_equal(code.decode(cols, rows, geometry.index), info), (geometry.index, cols)


class TestRowCodes:
    """Tests for systematic and Reed-Solomon row codes."""

    def test_systematic_encode(self) -> None:
        gf = canonical_field(5).galois_field()
        code = SystematicRowCode(gf([[1], [1]]))
        assert code.length == 3
        assert code.dimension == 2
        assert rs_encode_row(gf([2, 4]), code).tolist() == [2, 4, 1]

    def test_rs_any_k_positions(self) -> None:
        gf = canonical_field(7).galois_field()
        code = RsRowCode(rs_points(gf, 6), 3)
        info = gf([3, 1, 5])
        codeword = rs_encode_row(info, code)
        assert np.array_equal(codeword[:3], info)
        for positions in itertools.combinations(range(6), 3):
            recovered = code.decode(list(positions), codeword[list(positions)].reshape(-1, 1))
            assert np.array_equal(recovered[:, 0], info)

    def test_rs_points(self) -> None:
        gf = canonical_field(5).galois_field()
        points = rs_points(gf, 5)
        assert len(set(points.tolist())) == 5
        assert points[0] == 0
        with pytest.raises(FieldTooSmallError):
            rs_points(gf, 6)

    def test_row_code_rejects_bad_input(self) -> None:
        gf = canonical_field(5).galois_field()
        code = SystematicRowCode(gf([[1], [1]]))
        with pytest.raises(IndexRangeError):
            code.encode(gf([[1], [2], [3]]))
        with pytest.raises(IndexRangeError):
            code.decode([0, 3], gf([[1], [2]]))
        with pytest.raises(IndexRangeError):
            RsRowCode(rs_points(gf, 3), 4)


class TestReferenceCode:
    """Tests for the four-node GF(5) layout."""

    def test_stored_array(self) -> None:
        """Layer 1 extras W' = C1 + 2 C2 + 3 C3 become the information of the last row."""
        code = four_node_reference_code()
        gf = code.field
        array = code.encode(gf([1, 2, 3, 4, 0, 1]))
        assert array.symbols[:, :, 0].tolist() == [[1, 2, 3, 1], [4, 0, 1, 0], [4, 2, 1, 3]]

    def test_every_recovery_set(self) -> None:
        _assert_every_subset_decodes(four_node_reference_code())

    def test_layer_two_reads_fewer_symbols(self) -> None:
        """Layer 2 reads 2 nodes x 3 rows = 6 symbols; layer 1 reads 3 x 2 = 6 as well."""
        code = four_node_reference_code()
        first, second = code.plan.layers
        assert first.recovery * first.row_stop == 6
        assert second.recovery * second.row_stop == 6

    def test_inner_failure_reports_location(self) -> None:
        """A zero extra-parity column cannot complete the upper rows."""
        spec = canonical_field(5)
        gf = spec.galois_field()
        upper = SystematicRowCode(gf([[1, 0], [1, 0], [1, 0]]))
        lower = SystematicRowCode(gf([[1, 1], [1, 2]]))
        code = FlexMdsCode(FOUR_NODE_PROFILE, field=spec, factory=lambda j, x: upper if j == 1 else lower)
        array = code.encode(gf([1, 2, 3, 4, 0, 1]))
        with pytest.raises(InnerDecodeError) as exc:
            code.decode([0, 1], array.read([0, 1], 3), 2)
        assert exc.value.layer == 1
        assert exc.value.row == 1


class TestFlexMdsCode:
    """Tests for the standard Reed-Solomon flexible MDS code."""

    def test_field_choice(self) -> None:
        assert mds_field_for(FOUR_NODE_PROFILE).order == 5
        assert mds_field_for(THREE_LAYER).order == 8

    def test_two_layer_recovery_sets(self) -> None:
        _assert_every_subset_decodes(FlexMdsCode(FOUR_NODE_PROFILE))

    def test_three_layer_recovery_sets(self) -> None:
        _assert_every_subset_decodes(FlexMdsCode(THREE_LAYER))

    def test_block_symbols(self) -> None:
        """Block information of width w decodes column by column."""
        code = FlexMdsCode(THREE_LAYER)
        info = code.field.Random((12, 3), seed=3)
        array = code.encode(info)
        assert array.block_size == 3
        decoded = code.decode_nodes([5, 1, 3], array.read([5, 1, 3], 6), 3)
        assert np.array_equal(decoded, info)

    def test_extra_nodes_are_ignored(self) -> None:
        code = build_mds_code(FOUR_NODE_PROFILE)
        info = code.field([1, 2, 3, 4, 0, 1])
        array = flex_mds_encode(info, FOUR_NODE_PROFILE)
        assert codeword_rows_equal(array, code.encode(info))
        decoded = flex_mds_decode([0, 1, 2, 3], array.read([0, 1, 2, 3], 3), 2, FOUR_NODE_PROFILE)
        assert np.array_equal(decoded, info)

    def test_too_few_nodes(self) -> None:
        code = FlexMdsCode(FOUR_NODE_PROFILE)
        array = code.encode(code.field([1, 2, 3, 4, 0, 1]))
        with pytest.raises(InsufficientNodesError):
            code.decode([0, 1], array.read([0, 1], 2), 1)

    def test_bad_indices(self) -> None:
        code = FlexMdsCode(FOUR_NODE_PROFILE)
        array = code.encode(code.field([1, 2, 3, 4, 0, 1]))
        with pytest.raises(IndexRangeError):
            code.decode([0, 0, 1], array.read([0, 0, 1], 2), 1)
        with pytest.raises(IndexRangeError):
            code.decode([0, 1, 2], array.read([0, 1, 2], 1), 1)
        with pytest.raises(IndexRangeError):
            code.decode([0, 1, 2], array.read([0, 1, 2], 3), 3)
        with pytest.raises(IndexRangeError):
            code.encode(code.field([1, 2, 3]))

    def test_rejects_other_families(self) -> None:
        profile = FlexProfile.from_pairs(12, [(6, 2), (4, 3)], family=CodeFamily.LRC, locality=2)
        with pytest.raises(ProfileError):
            FlexMdsCode(profile)
