"""Physics module - Maxwell theory, the Dirac monopole, Dirac operators and spinor quadratics."""

from gaugekit.modules.physics.dirac import (
    SpinorField,
    charge_conjugate,
    charge_conjugation_matrix,
    charge_conjugation_residual,
    dirac4,
    dirac_operator,
    dirac_rep,
    dirac_residual,
    dirac_square_check,
    helicity_exchange_residual,
    helicity_projectors,
    helicity_split,
    null_plane_wave,
    pauli_dirac,
    slash,
    spacetime_gammas,
)
from gaugekit.modules.physics.maxwell import (
    EMField,
    MaxwellResiduals,
    assemble_F,
    current_form,
    maxwell_residuals,
    plane_wave_field,
    spacetime_chart,
    uniform_magnetic_field,
)
from gaugekit.modules.physics.monopole import (
    MonopoleCharts,
    MonopoleReport,
    is_quantized,
    monopole_checks,
    monopole_fixture,
    shell_points,
)
from gaugekit.modules.physics.spinors import (
    SWResiduals,
    euclidean_chart,
    indefinite_pairing,
    pairing_invariance_residual,
    random_spin_matrix,
    self_duality_residual,
    sw_dirac,
    sw_positive_projector,
    sw_residuals,
    sw_rep,
    sw_sigma,
    sw_sigma_form,
)

__all__ = [
    "EMField",
    "MaxwellResiduals",
    "MonopoleCharts",
    "MonopoleReport",
    "SWResiduals",
    "SpinorField",
    "assemble_F",
    "charge_conjugate",
    "charge_conjugation_matrix",
    "charge_conjugation_residual",
    "current_form",
    "dirac4",
    "dirac_operator",
    "dirac_rep",
    "dirac_residual",
    "dirac_square_check",
    "euclidean_chart",
    "helicity_exchange_residual",
    "helicity_projectors",
    "helicity_split",
    "indefinite_pairing",
    "is_quantized",
    "maxwell_residuals",
    "monopole_checks",
    "monopole_fixture",
    "null_plane_wave",
    "pairing_invariance_residual",
    "pauli_dirac",
    "plane_wave_field",
    "random_spin_matrix",
    "self_duality_residual",
    "shell_points",
    "slash",
    "spacetime_chart",
    "spacetime_gammas",
    "sw_dirac",
    "sw_positive_projector",
    "sw_residuals",
    "sw_rep",
    "sw_sigma",
    "sw_sigma_form",
    "uniform_magnetic_field",
]
