"""Spinor pairings: the indefinite Dirac pairing on Cl(3,1) and the Seiberg-Witten quadratic form on ℝ⁴."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import expm

from gaugekit.config import tolerance
from gaugekit.errors import ValidationError
from gaugekit.modules.clifford.algebra import Signature, volume_element
from gaugekit.modules.clifford.reps import MatrixRep, constructed_gamma_rep, rep_of
from gaugekit.modules.clifford.spin import PinElement
from gaugekit.modules.forms.charts import Chart
from gaugekit.modules.forms.exterior import PForm, basis, ext_d
from gaugekit.modules.forms.hodge import star_matrix
from gaugekit.modules.physics.dirac import SpinorField, dirac_rep
from gaugekit.numerics import max_norm, partial, sweep_max

logger = logging.getLogger(__name__)

SW_SIGNATURE = Signature(4, 0)
# the orientation of ω whose +1 eigenspace gives self-dual σ(ψ) for dx¹∧dx²∧dx³∧dx⁴
SW_VOLUME_ORIENTATION = -1


# -- Indefinite pairing ------------------------------------------------------------


def indefinite_pairing(a: np.ndarray, b: np.ndarray, rep: MatrixRep | None = None) -> complex:
    """ā b = a† γ_4 b: hermitian, non-degenerate, not positive definite.

    Anti-linear in ``a``, linear in ``b``.
    """
    rep = rep or dirac_rep()
    gamma_t = rep.gammas[-1]
    return complex(np.conj(np.asarray(a)) @ gamma_t @ np.asarray(b))


def pairing_invariance_residual(
    phi: PinElement | np.ndarray,
    a: np.ndarray,
    b: np.ndarray,
    rep: MatrixRep | None = None,
) -> float:
    """|(φa)‾(φb) - λ ā b| with λ = Π(-q(v_i)) for a Pin element, 1 for a matrix.

    Spin elements with Π q(v_i) = 1 have λ = 1.
    """
    rep = rep or dirac_rep()
    if isinstance(phi, PinElement):
        M = rep_of(rep, phi.element)
        scale = float(np.prod([-phi.signature.q(v) for v in phi.factors])) if phi.factors else 1.0
    else:
        M, scale = np.asarray(phi), 1.0
    return abs(indefinite_pairing(M @ a, M @ b, rep) - scale * indefinite_pairing(a, b, rep))


def random_spin_matrix(rng: np.random.Generator, scale: float = 0.5, rep: MatrixRep | None = None) -> np.ndarray:
    """exp(½ Σ_{i<j} c_ij γ_i γ_j) for a random real bivector."""
    rep = rep or dirac_rep()
    n = rep.signature.n
    generator = np.zeros((rep.dim, rep.dim), dtype=complex)
    for i in range(n):
        for j in range(i + 1, n):
            generator += scale * rng.standard_normal() * rep.gammas[i] @ rep.gammas[j]
    return expm(0.5 * generator)


# -- Seiberg-Witten ------------------------------------------------------------------


@lru_cache(maxsize=1)
def sw_rep() -> MatrixRep:
    return constructed_gamma_rep(SW_SIGNATURE)


def sw_positive_projector(rep: MatrixRep | None = None) -> np.ndarray:
    """p₊ onto the positive half-spinors S⁺."""
    rep = rep or sw_rep()
    omega = rep_of(rep, volume_element(rep.signature, SW_VOLUME_ORIENTATION))
    return 0.5 * (np.eye(rep.dim) + omega)


def _check_positive(psi: np.ndarray, rep: MatrixRep, tol: float) -> None:
    leak = max_norm(psi - sw_positive_projector(rep) @ psi)
    if leak > tol:
        raise ValidationError(f"spinor leaves S⁺ by {leak:.3e}")


def sw_sigma(
    psi: np.ndarray,
    frame: np.ndarray | None = None,
    rep: MatrixRep | None = None,
    tol: float | None = None,
) -> np.ndarray:
    """σ(ψ) = Σ_ij (f_i ψ, f_j ψ) f^i∧f^j, returned in the coordinate basis dx^i∧dx^j (i < j).

    ``frame`` holds an orthonormal frame f_a = Σ_k R[k, a] e_k as columns.
    """
    rep = rep or sw_rep()
    tol = tolerance("geometric") if tol is None else tol
    psi = np.asarray(psi, dtype=complex)
    _check_positive(psi, rep, tol)
    R = np.eye(4) if frame is None else np.asarray(frame, dtype=float)
    if max_norm(R.T @ R - np.eye(4)) > 1e-10:
        raise ValidationError("frame is not orthonormal")

    acted = [sum(R[k, a] * rep.gammas[k] for k in range(4)) @ psi for a in range(4)]
    gram = np.array([[np.vdot(u, v) for v in acted] for u in acted])
    S = gram - gram.T
    coordinate = R @ S @ R.T
    return np.array([coordinate[i, j] for i, j in basis(4, 2)])


def self_duality_residual(sigma: np.ndarray) -> float:
    """|*σ - σ| for constant 2-form components on Euclidean ℝ⁴."""
    return max_norm(star_matrix(np.eye(4), 2) @ sigma - sigma)


def sw_sigma_form(psi: SpinorField, rep: MatrixRep | None = None) -> PForm:
    return PForm(psi.chart, 2, lambda x: sw_sigma(psi(x), rep=rep))


@dataclass
class SWResiduals:
    curvature: float
    dirac: float

    def as_tuple(self) -> tuple[float, float]:
        return self.curvature, self.dirac


def sw_dirac(psi: SpinorField, A_u1: PForm, h: float | None = None, rep: MatrixRep | None = None) -> SpinorField:
    """D_A ψ = Σ_j γ_j (∂_j + i A_j) ψ on flat ℝ⁴."""
    rep = rep or sw_rep()
    step = psi.chart.h if h is None else h

    def D(x: np.ndarray) -> np.ndarray:
        value = psi(x)
        A = A_u1(x)
        return sum(rep.gammas[j] @ (partial(psi, x, j, step) + 1j * A[j] * value) for j in range(4))

    return SpinorField(psi.chart, rep.dim, D, f"D⁺{psi.name}")


def sw_residuals(
    A_u1: PForm,
    psi: SpinorField,
    points: np.ndarray | None = None,
    h: float | None = None,
) -> SWResiduals:
    """(max |F⁺ - (i/4) σ(ψ)|, max |D⁺_A ψ|) over sample points."""
    chart = A_u1.chart
    if chart.dim != 4 or A_u1.degree != 1 or psi.dim != 4:
        raise ValidationError("Seiberg-Witten residuals need a 1-form and a 4-spinor on ℝ⁴")
    rep = sw_rep()
    F = ext_d(A_u1, h)
    star = star_matrix(np.eye(4), 2)
    sigma = sw_sigma_form(psi, rep)
    D = sw_dirac(psi, A_u1, h, rep)

    def curvature(x: np.ndarray) -> float:
        Fx = F(x)
        return max_norm(0.5 * (Fx + star @ Fx) - 0.25j * sigma(x))

    pts = chart.grid() if points is None else points
    result = SWResiduals(sweep_max(curvature, pts), sweep_max(lambda x: max_norm(D(x)), pts))
    logger.debug("Seiberg-Witten residuals %.3e / %.3e", *result.as_tuple())
    return result


def euclidean_chart(half_width: float = 1.0) -> Chart:
    return Chart.cube(4, -half_width, half_width, name="R4")
