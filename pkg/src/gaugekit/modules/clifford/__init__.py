"""Clifford module - blade arithmetic, Pin/Spin elements and matrix representations."""

from gaugekit.modules.clifford.algebra import (
    CliffordElement,
    Signature,
    alpha,
    anticommutes_with_vectors,
    basis_rank,
    blade_product,
    clifford_inverse,
    clifford_product,
    commutes_with_vectors,
    eta_square_sign,
    grade_parts,
    idempotents,
    left_multiplication_matrix,
    reverse,
    volume_element,
)
from gaugekit.modules.clifford.reps import (
    MatrixRep,
    adjointness_residuals,
    constructed_gamma_rep,
    invariant_inner_product,
    left_regular_rep,
    pauli_rep,
    rep_of,
)
from gaugekit.modules.clifford.spin import (
    PinElement,
    double_cover_check,
    orthogonality_residual,
    pin_to_orthogonal,
    random_pin,
    random_unit_vector,
    reflection,
    sign_defect,
    twisted_adjoint,
)

__all__ = [
    "CliffordElement",
    "MatrixRep",
    "PinElement",
    "Signature",
    "adjointness_residuals",
    "alpha",
    "anticommutes_with_vectors",
    "basis_rank",
    "blade_product",
    "clifford_inverse",
    "clifford_product",
    "commutes_with_vectors",
    "constructed_gamma_rep",
    "double_cover_check",
    "eta_square_sign",
    "grade_parts",
    "idempotents",
    "invariant_inner_product",
    "left_multiplication_matrix",
    "left_regular_rep",
    "orthogonality_residual",
    "pauli_rep",
    "pin_to_orthogonal",
    "random_pin",
    "random_unit_vector",
    "reflection",
    "rep_of",
    "reverse",
    "sign_defect",
    "twisted_adjoint",
    "volume_element",
]
