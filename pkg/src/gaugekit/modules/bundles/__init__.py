"""Bundles module - covers, transition cocycles and the connection-bundle group."""

from gaugekit.modules.bundles.cocycle import (
    Cochain,
    CochainSearch,
    Cocycle,
    CocycleReport,
    GroupKind,
    GroupOps,
    apply_gauge_cochain,
    are_equivalent,
    group_ops,
    identity_cochain,
    is_coboundary,
    piecewise_constant,
    validate_cocycle,
)
from gaugekit.modules.bundles.connection_group import (
    ConnectionBundleGroupElement,
    cbg_act,
    cbg_distance,
    cbg_identity,
    cbg_inverse,
    cbg_mul,
)
from gaugekit.modules.bundles.cover import Cover, OverlapComponent, box_region
from gaugekit.modules.bundles.derived import (
    ChartMap,
    density_cocycle,
    dual_cocycle,
    exterior_power_cocycle,
    jacobian_cocycle,
    section_transition,
    tensor_cocycle,
)
from gaugekit.modules.bundles.fixtures import Fixture, fixture_names, load_fixture

__all__ = [
    "ChartMap",
    "Cochain",
    "CochainSearch",
    "Cocycle",
    "CocycleReport",
    "ConnectionBundleGroupElement",
    "Cover",
    "Fixture",
    "GroupKind",
    "GroupOps",
    "OverlapComponent",
    "apply_gauge_cochain",
    "are_equivalent",
    "box_region",
    "cbg_act",
    "cbg_distance",
    "cbg_identity",
    "cbg_inverse",
    "cbg_mul",
    "density_cocycle",
    "dual_cocycle",
    "exterior_power_cocycle",
    "fixture_names",
    "group_ops",
    "identity_cochain",
    "is_coboundary",
    "jacobian_cocycle",
    "load_fixture",
    "piecewise_constant",
    "section_transition",
    "tensor_cocycle",
    "validate_cocycle",
]
