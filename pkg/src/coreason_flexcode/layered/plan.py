# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""Profile validation, layer geometry and the extra-parity identification map."""

from functools import lru_cache

from coreason_flexcode.exceptions import (
    IndexRangeError,
    ProfileDivisibilityError,
    ProfileError,
    ProfileMonotonicityError,
    ProfileProductError,
    ProfileTerminalError,
    RecoveryThresholdError,
)
from coreason_flexcode.layered.models import (
    CodeFamily,
    ExtraParityRef,
    FlexProfile,
    LayerGeometry,
    LayerPlan,
)
from coreason_flexcode.utils.logger import logger


def expected_recovery(profile: FlexProfile, dimension: int) -> int:
    """Recovery threshold R_j implied by the family for a layer of dimension k_j."""
    if profile.family is CodeFamily.LRC and profile.locality:
        return dimension + dimension // profile.locality - 1
    return dimension


def _check_family(profile: FlexProfile) -> None:
    dims = [layer.dimension for layer in profile.layers]
    if profile.family is CodeFamily.LRC:
        r = profile.locality
        if r is None:
            raise ProfileDivisibilityError("LRC profiles require a locality r")
        if profile.n % (r + 1):
            raise ProfileDivisibilityError(f"Group size r+1={r + 1} does not divide n={profile.n}")
        bad = [k_j for k_j in dims if k_j % r]
        if bad:
            raise ProfileDivisibilityError(f"Locality r={r} does not divide layer dimensions {bad}")
    if profile.family is CodeFamily.MSR and profile.n <= profile.k:
        raise ProfileDivisibilityError(f"MSR codes need n > k, got n={profile.n}, k={profile.k}")
    if profile.family is CodeFamily.PMDS and profile.symbol_erasures >= profile.info_symbols:
        raise ProfileDivisibilityError(
            f"PMDS symbol erasures s={profile.symbol_erasures} leave no information (k*l={profile.info_symbols})"
        )
    for layer in profile.layers:
        wanted = expected_recovery(profile, layer.dimension)
        if layer.recovery != wanted:
            raise RecoveryThresholdError(
                f"{profile.family.value} layer with k_j={layer.dimension} needs R_j={wanted}, got {layer.recovery}"
            )
        if layer.recovery > profile.n:
            raise RecoveryThresholdError(f"R_j={layer.recovery} exceeds n={profile.n}")


def build_references(profile: FlexProfile) -> tuple[ExtraParityRef, ...]:
    """
    Identify every extra parity with an information slot of a lower layer.

    Extra y of layer j feeds target layer j' when k_{j'} - k_a < y <= k_{j'-1} - k_a.
    The sources of one target layer, taken in (layer, row, index) order, fill its
    information slots row by row: the c-th source lands on row c // k_{j'} + 1,
    slot c % k_{j'} + 1.
    """
    dims = [layer.dimension for layer in profile.layers]
    rows = [0] + [layer.rows for layer in profile.layers]
    k_a = profile.k
    refs: list[ExtraParityRef] = []
    for target in range(2, profile.depth + 1):
        k_target = dims[target - 1]
        low, high = k_target - k_a + 1, dims[target - 2] - k_a
        counter = 0
        for source in range(1, target):
            for x in range(1, rows[source] - rows[source - 1] + 1):
                for y in range(low, high + 1):
                    refs.append(
                        ExtraParityRef(
                            source_layer=source,
                            source_row=x,
                            source_index=y,
                            target_layer=target,
                            target_row=counter // k_target + 1,
                            target_index=counter % k_target + 1,
                        )
                    )
                    counter += 1
        slots = k_target * (rows[target] - rows[target - 1])
        if counter != slots:  # pragma: no cover
            raise ProfileProductError(f"Layer {target}: {counter} extra parities for {slots} information slots")
    return tuple(refs)


@lru_cache(maxsize=256)
def validate_profile(profile: FlexProfile) -> LayerPlan:
    """
    Validate a flexible profile and derive its layer plan.

    Args:
        profile: The (n, k, l) parameters and recovery tuples.

    Returns:
        The LayerPlan with per-layer geometry and the extra-parity map.

    Raises:
        ProfileTerminalError: If the last tuple is not (k, l).
        ProfileProductError: If some k_j * l_j differs from k * l.
        ProfileMonotonicityError: If k_j is not strictly decreasing or l_j not strictly increasing.
        ProfileDivisibilityError: On family-specific divisibility failures.
        RecoveryThresholdError: If a stated R_j disagrees with the family rule.
    """
    layers = profile.layers
    last = layers[-1]
    if last.dimension != profile.k or last.rows != profile.sub_packetization:
        raise ProfileTerminalError(
            f"Last layer (k_a, l_a)=({last.dimension}, {last.rows}) must equal "
            f"(k, l)=({profile.k}, {profile.sub_packetization})"
        )
    product = profile.info_symbols
    for j, layer in enumerate(layers, start=1):
        if layer.dimension * layer.rows != product:
            raise ProfileProductError(f"Layer {j}: k_j*l_j={layer.dimension * layer.rows} != k*l={product}")
    for j in range(1, len(layers)):
        if layers[j].dimension >= layers[j - 1].dimension or layers[j].rows <= layers[j - 1].rows:
            raise ProfileMonotonicityError(f"Layers {j} and {j + 1} are not strictly ordered")
    if layers[0].dimension > profile.n:
        raise ProfileError(f"k_1={layers[0].dimension} exceeds n={profile.n}")
    _check_family(profile)

    geometry = []
    previous_rows = 0
    for j, layer in enumerate(layers, start=1):
        geometry.append(
            LayerGeometry(
                index=j,
                row_start=previous_rows,
                row_stop=layer.rows,
                recovery=layer.recovery,
                dimension=layer.dimension,
                inner_length=profile.n + layer.dimension - profile.k,
                extra_count=layer.dimension - profile.k,
            )
        )
        previous_rows = layer.rows
    plan = LayerPlan(profile=profile, layers=tuple(geometry), references=build_references(profile))
    logger.debug(f"Validated {profile.family.value} profile n={profile.n} with {profile.depth} layers")
    return plan


def extra_parity_target(j: int, x: int, y: int, plan: LayerPlan) -> ExtraParityRef:
    """
    Target information slot of extra parity y in row x of layer j.

    Raises:
        IndexRangeError: If (j, x, y) does not name an extra parity.
    """
    depth = plan.profile.depth
    if not 1 <= j < depth:
        raise IndexRangeError(f"Layer {j} has no extra parities (valid layers 1..{depth - 1})")
    geometry = plan.layer(j)
    if not 1 <= x <= geometry.row_count:
        raise IndexRangeError(f"Row {x} outside layer {j} (1..{geometry.row_count})")
    if not 1 <= y <= geometry.extra_count:
        raise IndexRangeError(f"Extra parity {y} outside layer {j} (1..{geometry.extra_count})")
    return plan.target_of(j, x, y)


def counting_identity_holds(plan: LayerPlan, j: int) -> bool:
    """Extra parities flowing into layer j exactly fill its information slots."""
    dims = [layer.dimension for layer in plan.profile.layers]
    rows = [0] + [layer.rows for layer in plan.profile.layers]
    inflow = sum((dims[j - 2] - dims[j - 1]) * (rows[s] - rows[s - 1]) for s in range(1, j))
    return inflow == dims[j - 1] * (rows[j] - rows[j - 1])
