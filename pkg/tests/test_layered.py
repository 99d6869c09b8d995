# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Tests for flexible profiles, layer plans and the extra-parity map."""

import pytest

from coreason_flexcode.exceptions import (
    IndexRangeError,
    ProfileDivisibilityError,
    ProfileError,
    ProfileMonotonicityError,
    ProfileProductError,
    ProfileTerminalError,
    RecoveryThresholdError,
)
from coreason_flexcode.layered import (
    CodeFamily,
    FlexProfile,
    LayerSpec,
    counting_identity_holds,
    expected_recovery,
    extra_parity_target,
    validate_profile,
)


@pytest.fixture(name="three_layer")
def three_layer_profile() -> FlexProfile:
    return FlexProfile.from_pairs(6, [(4, 3), (3, 4), (2, 6)])


class TestProfile:
    """Tests for FlexProfile construction."""

    def test_from_pairs_mds(self) -> None:
        profile = FlexProfile.from_pairs(4, [(3, 2), (2, 3)])
        assert profile.k == 2
        assert profile.sub_packetization == 3
        assert [layer.recovery for layer in profile.layers] == [3, 2]
        assert profile.depth == 2
        assert profile.info_symbols == 6

    def test_from_pairs_lrc(self) -> None:
        """LRC thresholds are k_j + k_j / r - 1."""
        profile = FlexProfile.from_pairs(12, [(6, 2), (4, 3)], family=CodeFamily.LRC, locality=2)
        assert [layer.recovery for layer in profile.layers] == [8, 5]
        assert expected_recovery(profile, 6) == 8


class TestValidation:
    """Tests for validate_profile failures."""

    def _profile(self, n: int, layers: list[tuple[int, int, int]], **kwargs: object) -> FlexProfile:
        specs = tuple(LayerSpec(recovery=r, dimension=k, rows=row) for r, k, row in layers)
        return FlexProfile(
            n=n,
            k=specs[-1].dimension,
            sub_packetization=specs[-1].rows,
            layers=specs,
            **kwargs,  # type: ignore[arg-type]
        )

    def test_terminal(self) -> None:
        profile = FlexProfile(
            n=4,
            k=2,
            sub_packetization=4,
            layers=(LayerSpec(recovery=3, dimension=3, rows=2), LayerSpec(recovery=2, dimension=2, rows=3)),
        )
        with pytest.raises(ProfileTerminalError):
            validate_profile(profile)

    def test_product(self) -> None:
        with pytest.raises(ProfileProductError):
            validate_profile(self._profile(4, [(3, 3, 2), (2, 2, 4)]))

    def test_monotonicity(self) -> None:
        with pytest.raises(ProfileMonotonicityError):
            validate_profile(self._profile(6, [(2, 2, 6), (3, 3, 4)]))

    def test_dimension_exceeds_nodes(self) -> None:
        with pytest.raises(ProfileError):
            validate_profile(self._profile(3, [(4, 4, 3), (3, 3, 4)]))

    def test_recovery_threshold(self) -> None:
        with pytest.raises(RecoveryThresholdError):
            validate_profile(self._profile(4, [(4, 3, 2), (2, 2, 3)]))

    def test_lrc_divisibility(self) -> None:
        with pytest.raises(ProfileDivisibilityError):
            validate_profile(FlexProfile.from_pairs(10, [(6, 2), (4, 3)], family=CodeFamily.LRC, locality=2))
        with pytest.raises(ProfileDivisibilityError):
            validate_profile(FlexProfile.from_pairs(12, [(6, 2), (4, 3)], family=CodeFamily.LRC, locality=4))
        with pytest.raises(ProfileDivisibilityError):
            validate_profile(FlexProfile.from_pairs(12, [(6, 2), (4, 3)], family=CodeFamily.LRC, locality=3))

    def test_lrc_recovery_exceeds_nodes(self) -> None:
        """k_1=6 with r=2 needs R_1=8 of only 6 nodes."""
        with pytest.raises(RecoveryThresholdError):
            validate_profile(FlexProfile.from_pairs(6, [(6, 2), (4, 3)], family=CodeFamily.LRC, locality=2))

    def test_msr_needs_parity(self) -> None:
        with pytest.raises(ProfileDivisibilityError):
            validate_profile(FlexProfile.from_pairs(3, [(3, 1)], family=CodeFamily.MSR))

    def test_lrc_requires_locality(self) -> None:
        with pytest.raises(ProfileDivisibilityError):
            validate_profile(FlexProfile.from_pairs(12, [(6, 2), (4, 3)], family=CodeFamily.LRC))

    def test_pmds_budget(self) -> None:
        profile = FlexProfile.from_pairs(5, [(3, 2), (2, 3)], family=CodeFamily.PMDS, symbol_erasures=6)
        with pytest.raises(ProfileDivisibilityError):
            validate_profile(profile)


class TestPlan:
    """Tests for the derived geometry and extra-parity identification."""

    def test_two_layer_geometry(self) -> None:
        plan = validate_profile(FlexProfile.from_pairs(4, [(3, 2), (2, 3)]))
        first, second = plan.layers
        assert (first.row_start, first.row_stop, first.inner_length, first.extra_count) == (0, 2, 5, 1)
        assert (second.row_start, second.row_stop, second.inner_length, second.extra_count) == (2, 3, 4, 0)
        assert plan.target_of(1, 1, 1).target == (2, 1, 1)
        assert plan.target_of(1, 2, 1).target == (2, 1, 2)

    def test_three_layer_map(self, three_layer: FlexProfile) -> None:
        """Sources of one target layer fill its slots row by row in (layer, row, index) order."""
        plan = validate_profile(three_layer)
        assert [plan.target_of(1, x, 2).target for x in (1, 2, 3)] == [(2, 1, 1), (2, 1, 2), (2, 1, 3)]
        assert plan.target_of(1, 1, 1).target == (3, 1, 1)
        assert plan.target_of(1, 2, 1).target == (3, 1, 2)
        assert plan.target_of(1, 3, 1).target == (3, 2, 1)
        assert plan.target_of(2, 1, 1).target == (3, 2, 2)
        assert plan.source_of(3, 2, 2).source == (2, 1, 1)

    def test_map_is_a_bijection(self, three_layer: FlexProfile) -> None:
        plan = validate_profile(three_layer)
        targets = [ref.target for ref in plan.references]
        assert len(set(targets)) == len(targets)
        slots = sum(g.dimension * g.row_count for g in plan.layers[1:])
        assert len(targets) == slots
        assert all(counting_identity_holds(plan, j) for j in (2, 3))

    def test_extra_parity_target_bounds(self, three_layer: FlexProfile) -> None:
        plan = validate_profile(three_layer)
        assert extra_parity_target(2, 1, 1, plan).target == (3, 2, 2)
        with pytest.raises(IndexRangeError):
            extra_parity_target(3, 1, 1, plan)
        with pytest.raises(IndexRangeError):
            extra_parity_target(1, 4, 1, plan)
        with pytest.raises(IndexRangeError):
            extra_parity_target(2, 1, 2, plan)

    def test_plan_is_cached(self, three_layer: FlexProfile) -> None:
        assert validate_profile(three_layer) is validate_profile(three_layer)
