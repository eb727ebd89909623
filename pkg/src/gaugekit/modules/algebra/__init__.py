"""Algebra module - finite group actions and matrix Lie group kernels."""

from gaugekit.modules.algebra.groups import (
    EquivalenceWitness,
    FiniteAction,
    FiniteGroup,
    action_from_table,
    conjugacy_check,
    coset_action,
    coset_action_equivalence,
    cyclic_group,
    is_free,
    is_transitive,
    left_cosets,
    natural_action,
    orbits,
    regular_action,
    stabilizer,
    symmetric_group,
    trivial_action,
    trivial_group,
)
from gaugekit.modules.algebra.lie import (
    PAULI,
    GroupTag,
    MatrixLieGroup,
    adjoint,
    bch3,
    bch_defect,
    bracket,
    checked_inverse,
    jacobi_residual,
    mat_exp,
    one_parameter_defect,
    rep_derivative,
    su2_basis,
)

__all__ = [
    "PAULI",
    "EquivalenceWitness",
    "FiniteAction",
    "FiniteGroup",
    "GroupTag",
    "MatrixLieGroup",
    "action_from_table",
    "adjoint",
    "bch3",
    "bch_defect",
    "bracket",
    "checked_inverse",
    "conjugacy_check",
    "coset_action",
    "coset_action_equivalence",
    "cyclic_group",
    "is_free",
    "is_transitive",
    "jacobi_residual",
    "left_cosets",
    "mat_exp",
    "natural_action",
    "one_parameter_defect",
    "orbits",
    "regular_action",
    "rep_derivative",
    "stabilizer",
    "su2_basis",
    "symmetric_group",
    "trivial_action",
    "trivial_group",
]
