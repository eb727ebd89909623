"""Forms module - exterior calculus on a single coordinate chart."""

from gaugekit.modules.forms.charts import Chart, MetricField, VectorField
from gaugekit.modules.forms.exterior import (
    PForm,
    basis,
    compound_matrix,
    d_squared_residual,
    ext_d,
    permutation_sign,
    positions,
    wedge,
)
from gaugekit.modules.forms.hodge import (
    codifferential,
    delta_squared_residual,
    hodge_laplacian,
    hodge_star,
    inner_product,
    lower_index,
    orthonormal_coframe,
    raise_index,
    self_dual_split,
    star_matrix,
    volume_form,
)
from gaugekit.modules.forms.integration import (
    Quadrature,
    integrate_nform,
    pullback,
    sphere_chart,
    sphere_flux,
    sphere_map,
)

__all__ = [
    "Chart",
    "MetricField",
    "PForm",
    "Quadrature",
    "VectorField",
    "basis",
    "codifferential",
    "delta_squared_residual",
    "compound_matrix",
    "d_squared_residual",
    "ext_d",
    "hodge_laplacian",
    "hodge_star",
    "inner_product",
    "integrate_nform",
    "lower_index",
    "orthonormal_coframe",
    "permutation_sign",
    "positions",
    "pullback",
    "raise_index",
    "self_dual_split",
    "sphere_chart",
    "sphere_flux",
    "sphere_map",
    "star_matrix",
    "volume_form",
]
