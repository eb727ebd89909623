"""Transport module - ordered exponentials, parallel transport and holonomy."""

from gaugekit.modules.transport.holonomy import (
    HolonomyFit,
    holonomy_curvature_fit,
    holonomy_log_defect,
    holonomy_rectangle,
)
from gaugekit.modules.transport.ordered import (
    composition_check,
    oracle_defect,
    picard_bound,
    picard_series,
    rk4_fundamental,
    time_ordered_exp,
)
from gaugekit.modules.transport.parallel import (
    TransportOperator,
    parallel_transport_linear,
    parallel_transport_principal,
    transport_transition_residual,
    unitarity_defect,
)
from gaugekit.modules.transport.paths import Path, rectangle_loop

__all__ = [
    "HolonomyFit",
    "Path",
    "TransportOperator",
    "composition_check",
    "holonomy_curvature_fit",
    "holonomy_log_defect",
    "holonomy_rectangle",
    "oracle_defect",
    "parallel_transport_linear",
    "parallel_transport_principal",
    "picard_bound",
    "picard_series",
    "rectangle_loop",
    "rk4_fundamental",
    "time_ordered_exp",
    "transport_transition_residual",
    "unitarity_defect",
]
