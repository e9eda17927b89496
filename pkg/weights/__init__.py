"""Weight sets and orbit canonicalization."""

from .weight_sets import (
    WeightKind, WeightSet, units, unit_squares, s_weights, l_weights, custom_weights,
    subgroup_weights, product_preimage, build_weight_set, generated_subgroup_mask, mask_of, members_of,
)
from .orbits import OrbitTable, orbit_table, canonicalize_term

__all__ = [
    "WeightKind",
    "WeightSet",
    "units",
    "unit_squares",
    "s_weights",
    "l_weights",
    "custom_weights",
    "subgroup_weights",
    "product_preimage",
    "build_weight_set",
    "generated_subgroup_mask",
    "mask_of",
    "members_of",
    "OrbitTable",
    "orbit_table",
    "canonicalize_term",
]
