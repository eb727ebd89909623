"""Dirac operators: the Pauli operator on ℝ³ and the coupled Dirac equation on Minkowski space.

The 4D operator uses the constructed representation of Cl(3,1), whose
generators satisfy γ_k² = -1 for k = 1, 2, 3 and γ_4² = 1. Spacetime index
μ = 0 (time) is carried by γ_4, so with g = diag(1, -1, -1, -1)

    D = Σ g^{μν} γ_ν ∂_μ,   D² = ∂_t² - ∇²,

and the coupled equation is (iD + q A̸ - m) ψ = 0 with A̸ = Σ A^ν γ_ν.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import null_space

from gaugekit.errors import SingularError, ValidationError
from gaugekit.modules.clifford.algebra import Signature, volume_element
from gaugekit.modules.clifford.reps import MatrixRep, constructed_gamma_rep, pauli_rep, rep_of
from gaugekit.modules.forms.charts import Chart
from gaugekit.modules.forms.exterior import PForm
from gaugekit.modules.physics.maxwell import spacetime_chart
from gaugekit.numerics import laplacian, max_norm, nested_step, partial, sweep_max

logger = logging.getLogger(__name__)

MINKOWSKI_INVERSE = np.diag([1.0, -1.0, -1.0, -1.0])
DIRAC_SIGNATURE = Signature(3, 1)


@dataclass(frozen=True, eq=False)
class SpinorField:
    """Complex spinor-valued field ψ: chart → ℂ^dim."""

    chart: Chart
    dim: int
    components: Callable[[np.ndarray], np.ndarray]
    name: str = "ψ"

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = self.chart.require(x)
        v = np.asarray(self.components(x), dtype=complex)
        if v.shape != (self.dim,):
            raise ValidationError(f"{self.name}: spinor has shape {v.shape}, expected ({self.dim},)")
        if not np.all(np.isfinite(v)):
            raise ValidationError(f"{self.name}: non-finite spinor at {x}")
        return v

    def map(self, M: np.ndarray, name: str | None = None) -> SpinorField:
        """Pointwise x ↦ M ψ(x)."""
        M = np.asarray(M)
        return SpinorField(self.chart, M.shape[0], lambda x: M @ self(x), name or self.name)

    def conjugate(self) -> SpinorField:
        return SpinorField(self.chart, self.dim, lambda x: np.conj(self(x)), f"{self.name}̄")

    @classmethod
    def zero(cls, chart: Chart, dim: int) -> SpinorField:
        zeros = np.zeros(dim, dtype=complex)
        return cls(chart, dim, lambda x: zeros, "0")


def _operator(
    psi: SpinorField,
    gammas: Sequence[np.ndarray],
    inverse_metric: np.ndarray,
    h: float | None,
) -> Callable[[np.ndarray], np.ndarray]:
    """x ↦ Σ g^{μν} γ_ν ∂_μ ψ."""
    step = psi.chart.h if h is None else h
    raised = [sum(inverse_metric[mu, nu] * gammas[nu] for nu in range(len(gammas))) for mu in range(len(gammas))]

    def D(x: np.ndarray) -> np.ndarray:
        return sum(raised[mu] @ partial(psi, x, mu, step) for mu in range(len(raised)))

    return D


# -- Pauli operator on ℝ³ ---------------------------------------------------------


def pauli_dirac(psi: SpinorField, h: float | None = None) -> SpinorField:
    """Dψ = Σ_j σ_j ∂_j ψ on a 3-dimensional Euclidean chart."""
    if psi.chart.dim != 3 or psi.dim != 2:
        raise ValidationError(f"the Pauli operator acts on 2-spinors over ℝ³, got {psi.dim} over {psi.chart.dim}")
    D = _operator(psi, pauli_rep().gammas, np.eye(3), h)
    return SpinorField(psi.chart, 2, D, f"D{psi.name}")


def dirac_square_check(psi: SpinorField, points: np.ndarray | None = None, h: float | None = None) -> float:
    """max |D²ψ - Δψ| with both derivatives at step h."""
    step = nested_step() if h is None else h
    DD = pauli_dirac(pauli_dirac(psi, step), step)
    pts = psi.chart.grid() if points is None else points
    return sweep_max(lambda x: max_norm(DD(x) - laplacian(psi, x, step)), pts)


# -- Dirac operator on Minkowski space ---------------------------------------------


@lru_cache(maxsize=1)
def dirac_rep() -> MatrixRep:
    return constructed_gamma_rep(DIRAC_SIGNATURE)


def spacetime_gammas(rep: MatrixRep | None = None) -> tuple[np.ndarray, ...]:
    """(γ_t, γ_x, γ_y, γ_z) = (γ_4, γ_1, γ_2, γ_3)."""
    rep = rep or dirac_rep()
    g1, g2, g3, g4 = rep.gammas
    return g4, g1, g2, g3


def slash(v_lower: np.ndarray, rep: MatrixRep | None = None) -> np.ndarray:
    """v̸ = Σ g^{μν} v_μ γ_ν for a covector v_μ."""
    gammas = spacetime_gammas(rep)
    raised = MINKOWSKI_INVERSE @ np.asarray(v_lower)
    return sum(raised[nu] * gammas[nu] for nu in range(4))


def dirac_operator(psi: SpinorField, h: float | None = None, rep: MatrixRep | None = None) -> SpinorField:
    if psi.chart.dim != 4 or psi.dim != 4:
        raise ValidationError(f"the Dirac operator acts on 4-spinors over ℝ^(3,1), got {psi.dim} over {psi.chart.dim}")
    D = _operator(psi, spacetime_gammas(rep), MINKOWSKI_INVERSE, h)
    return SpinorField(psi.chart, 4, D, f"D{psi.name}")


def dirac4(
    psi: SpinorField,
    m: float = 0.0,
    q: float = 0.0,
    A_em: PForm | None = None,
    h: float | None = None,
    rep: MatrixRep | None = None,
) -> SpinorField:
    """Residual field (iD + q A̸ - m) ψ; ``A_em`` is a real 1-form A_μ dx^μ."""
    if A_em is not None and (A_em.degree != 1 or A_em.n != 4):
        raise ValidationError(f"the potential must be a 1-form on the spacetime chart, got degree {A_em.degree}")
    Dpsi = dirac_operator(psi, h, rep)

    def residual(x: np.ndarray) -> np.ndarray:
        value = psi(x)
        out = 1j * Dpsi(x) - m * value
        if A_em is not None and q != 0.0:
            out = out + q * slash(A_em(x), rep) @ value
        return out

    return SpinorField(psi.chart, 4, residual, f"R[{psi.name}]")


def dirac_residual(
    psi: SpinorField,
    m: float = 0.0,
    q: float = 0.0,
    A_em: PForm | None = None,
    points: np.ndarray | None = None,
    h: float | None = None,
) -> float:
    R = dirac4(psi, m, q, A_em, h)
    pts = psi.chart.grid() if points is None else points
    return sweep_max(lambda x: max_norm(R(x)), pts)


def helicity_projectors(rep: MatrixRep | None = None) -> tuple[np.ndarray, np.ndarray]:
    """p± = (1 ± ρ(ω))/2 with ω = i e_1 e_2 e_3 e_4."""
    rep = rep or dirac_rep()
    omega = rep_of(rep, volume_element(rep.signature))
    identity = np.eye(rep.dim)
    return 0.5 * (identity + omega), 0.5 * (identity - omega)


def helicity_split(psi: SpinorField, rep: MatrixRep | None = None) -> tuple[SpinorField, SpinorField]:
    """(p₊ψ, p₋ψ), the Weyl components."""
    p_plus, p_minus = helicity_projectors(rep)
    return psi.map(p_plus, f"{psi.name}+"), psi.map(p_minus, f"{psi.name}-")


def helicity_exchange_residual(
    psi: SpinorField, points: np.ndarray | None = None, h: float | None = None, rep: MatrixRep | None = None
) -> float:
    """max(|p₊ D p₊ψ|, |p₋ D p₋ψ|): D maps each Weyl bundle into the other."""
    p_plus, p_minus = helicity_projectors(rep)
    plus, minus = helicity_split(psi, rep)
    D_plus, D_minus = dirac_operator(plus, h, rep), dirac_operator(minus, h, rep)
    pts = psi.chart.grid() if points is None else points
    return sweep_max(lambda x: max(max_norm(p_plus @ D_plus(x)), max_norm(p_minus @ D_minus(x))), pts)


def null_plane_wave(
    k: Sequence[float],
    m: float = 0.0,
    chart: Chart | None = None,
    rep: MatrixRep | None = None,
) -> SpinorField:
    """ψ = u e^{i k·x} with u spanning ker(-k̸ - m), so that (iD - m)ψ = 0.

    ``k`` is a covector k_μ; it must satisfy g^{μν} k_μ k_ν = m².
    """
    k = np.asarray(k, dtype=float)
    chart = chart or spacetime_chart()
    norm = float(k @ MINKOWSKI_INVERSE @ k)
    if abs(norm - m**2) > 1e-10 * max(1.0, float(k @ k)):
        raise ValidationError(f"momentum {k} has k·k = {norm:.6g}, need m² = {m**2:.6g}")
    kernel = null_space(-slash(k, rep) - m * np.eye(4))
    if kernel.shape[1] == 0:
        raise SingularError(f"no plane-wave polarisation for k = {k}, m = {m}")
    u = kernel[:, 0]
    logger.debug("Plane-wave kernel for k=%s has dimension %d", k, kernel.shape[1])
    return SpinorField(chart, 4, lambda x: u * np.exp(1j * float(k @ x)), "plane-wave")


# -- Charge conjugation ------------------------------------------------------------


def charge_conjugation_matrix(rep: MatrixRep | None = None) -> np.ndarray:
    """C with γ_μ C = -C γ̄_μ for every generator, normalised to be unitary.

    ψ ↦ C ψ̄ then takes solutions of (iD + qA̸ - m)ψ = 0 to solutions of the
    equation with charge -q. C is a null vector of the stacked linear maps
    X ↦ γ_μ X + X γ̄_μ, vectorised column-major.
    """
    rep = rep or dirac_rep()
    d = rep.dim
    identity = np.eye(d)
    stacked = np.vstack([np.kron(identity, g) + np.kron(np.conj(g).T, identity) for g in rep.gammas])
    kernel = null_space(stacked)
    if kernel.shape[1] == 0:
        raise SingularError(f"no charge conjugation for rep {rep.tag} of {rep.signature}")
    C = kernel[:, 0].reshape((d, d), order="F")
    C = C * np.sqrt(d) / np.linalg.norm(C)
    if abs(np.linalg.det(C)) < 1e-10:
        raise SingularError("charge-conjugation solution is singular")
    return C


def charge_conjugate(psi: SpinorField, rep: MatrixRep | None = None) -> SpinorField:
    C = charge_conjugation_matrix(rep)
    return SpinorField(psi.chart, psi.dim, lambda x: C @ np.conj(psi(x)), f"{psi.name}_c")


def charge_conjugation_residual(
    psi: SpinorField,
    m: float = 0.0,
    q: float = 1.0,
    A_em: PForm | None = None,
    points: np.ndarray | None = None,
    h: float | None = None,
) -> float:
    """max |R_{-q}(C ψ̄) - C conj(R_{+q} ψ)| over sample points."""
    C = charge_conjugation_matrix()
    lhs = dirac4(charge_conjugate(psi), m, -q, A_em, h)
    rhs = dirac4(psi, m, q, A_em, h)
    pts = psi.chart.grid() if points is None else points
    return sweep_max(lambda x: max_norm(lhs(x) - C @ np.conj(rhs(x))), pts)
