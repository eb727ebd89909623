"""Connections module - local connection data, gauge laws, curvature and Lagrangian densities."""

from gaugekit.modules.connections.curvature import (
    bianchi_residual,
    cov_ext_d,
    curvature_general,
    curvature_linear,
    curvature_principal,
    second_covariant_residual,
)
from gaugekit.modules.connections.derivatives import (
    comcv_residual,
    covariant_derivative,
    dual_connection,
    dual_leibniz_residual,
    lie_bracket,
    scalar_leibniz_residual,
    section_gauge_covariance,
    tensor_connection,
    tensor_leibniz_residual,
)
from gaugekit.modules.connections.gauge import (
    associated_connection,
    curvature_covariance_check,
    gauge_transform,
    infinitesimal_gauge,
    infinitesimal_gauge_defect,
    inverse_fiber_map,
    pure_gauge,
    transition_associated_residual,
    transition_general,
    transition_linear,
    transition_potential,
)
from gaugekit.modules.connections.lagrangians import (
    bpst_potential,
    chern_simons_density,
    coupling_covariance_residual,
    minimally_couple,
    yang_mills_density,
    ym_residual,
)
from gaugekit.modules.connections.levi_civita import (
    christoffel,
    frame_eta,
    levi_civita,
    levi_civita_coordinate,
    levi_civita_nbein,
    metric_compatibility_residual,
    metric_compatibility_tensor,
    structure_functions,
    torsion,
    torsion_residual,
)
from gaugekit.modules.connections.types import (
    CurvatureForm,
    FiberMap,
    GaugePotential,
    GeneralConnection,
    LinearConnection,
)

__all__ = [
    "CurvatureForm",
    "FiberMap",
    "GaugePotential",
    "GeneralConnection",
    "LinearConnection",
    "associated_connection",
    "bianchi_residual",
    "bpst_potential",
    "chern_simons_density",
    "christoffel",
    "comcv_residual",
    "coupling_covariance_residual",
    "cov_ext_d",
    "covariant_derivative",
    "curvature_covariance_check",
    "curvature_general",
    "curvature_linear",
    "curvature_principal",
    "dual_connection",
    "dual_leibniz_residual",
    "frame_eta",
    "gauge_transform",
    "infinitesimal_gauge",
    "infinitesimal_gauge_defect",
    "inverse_fiber_map",
    "levi_civita",
    "levi_civita_coordinate",
    "levi_civita_nbein",
    "lie_bracket",
    "metric_compatibility_residual",
    "metric_compatibility_tensor",
    "minimally_couple",
    "pure_gauge",
    "scalar_leibniz_residual",
    "second_covariant_residual",
    "section_gauge_covariance",
    "structure_functions",
    "tensor_connection",
    "tensor_leibniz_residual",
    "torsion",
    "torsion_residual",
    "transition_associated_residual",
    "transition_general",
    "transition_linear",
    "transition_potential",
    "yang_mills_density",
    "ym_residual",
]
