"""Yang-Mills and Chern-Simons densities, Yang-Mills residuals and minimal coupling."""

from __future__ import annotations

import logging
from typing import Callable, Sequence

import numpy as np

from gaugekit.errors import DegreeError, ValidationError
from gaugekit.modules.algebra.lie import PAULI, MatrixLieGroup
from gaugekit.modules.connections.curvature import cov_ext_d, curvature_linear
from gaugekit.modules.connections.gauge import gauge_transform
from gaugekit.modules.connections.types import CurvatureForm, GaugePotential, LinearConnection, MatrixField
from gaugekit.modules.forms.charts import Chart, MetricField
from gaugekit.modules.forms.exterior import PForm, ext_d, wedge
from gaugekit.modules.forms.hodge import hodge_star
from gaugekit.numerics import default_step, max_norm, nested_step, partial, sweep_max

logger = logging.getLogger(__name__)

Spinor = Callable[[np.ndarray], np.ndarray]


def _trace(a: PForm) -> PForm:
    return a.map_values(np.trace, ())


def yang_mills_density(F: CurvatureForm, g: MetricField, k: float = 1.0, orientation: int = 1) -> PForm:
    """-k Tr(F ∧ *F), a scalar n-form."""
    Fp = F.as_form()
    return -k * _trace(wedge(Fp, hodge_star(Fp, g, orientation)))


def ym_residual(
    A: LinearConnection,
    g: MetricField,
    j: PForm | None = None,
    orientation: int = 1,
    h: float | None = None,
) -> PForm:
    """*d_A*F - j, an End(F)-valued 1-form. ``j = None`` means the source-free equations."""
    F = curvature_linear(A).as_form()
    outer = nested_step() * A.chart.diameter if h is None else h
    star_F = hodge_star(F, g, orientation)
    lhs = hodge_star(cov_ext_d(star_F, A, adjoint=True, h=outer), g, orientation)
    if j is None:
        return lhs
    if j.degree != 1 or j.value_shape != lhs.value_shape:
        raise ValidationError(f"source must be a 1-form with values {lhs.value_shape}")
    return lhs - j


def chern_simons_density(A: LinearConnection, k: float = 1.0, h: float | None = None) -> PForm:
    """k Tr(A ∧ dA + ⅔ A ∧ A ∧ A) on a 3-dimensional chart."""
    if A.n != 3:
        raise DegreeError(f"the Chern-Simons form lives in three dimensions, got {A.n}")
    a = A.as_form()
    cubic = wedge(wedge(a, a), a)
    return k * _trace(wedge(a, ext_d(a, h)) + (2.0 / 3.0) * cubic)


def minimally_couple(
    L: Sequence[np.ndarray],
    M: np.ndarray,
    A: LinearConnection | None = None,
    h: float | None = None,
) -> Callable[[Spinor], Spinor]:
    """ψ ↦ Σ L_i (∂_i + A_i) ψ + M ψ."""
    L = [np.asarray(Li) for Li in L]
    M = np.asarray(M)
    d = M.shape[0]
    if M.shape != (d, d) or any(Li.shape != (d, d) for Li in L):
        raise ValidationError(f"L_i and M must all be {d}x{d}")
    if A is not None and (A.fiber_dim != d or A.n != len(L)):
        raise ValidationError(f"potential with fiber {A.fiber_dim} over {A.n} dims does not fit {len(L)} operators of size {d}")

    def operator(psi: Spinor) -> Spinor:
        def out(x: np.ndarray) -> np.ndarray:
            step = (A.chart.h if A is not None else default_step()) if h is None else h
            x = np.asarray(x, dtype=float)
            psi_x = np.asarray(psi(x))
            total = M @ psi_x
            coeffs = A(x) if A is not None else None
            for i, Li in enumerate(L):
                term = partial(psi, x, i, step)
                if coeffs is not None:
                    term = term + coeffs[i] @ psi_x
                total = total + Li @ term
            return total

        return out

    return operator


def coupling_covariance_residual(
    L: Sequence[np.ndarray],
    M: np.ndarray,
    A: LinearConnection,
    Lam: MatrixField,
    psi: Spinor,
    points: np.ndarray | None = None,
) -> float:
    """max |D_{A^Λ}(Λψ) - Λ D_A ψ|; Λ must commute with every L_i and M."""
    original = minimally_couple(L, M, A)(psi)
    transformed = minimally_couple(L, M, gauge_transform(A, Lam))(lambda y: np.asarray(Lam(y)) @ np.asarray(psi(y)))
    pts = A.chart.grid() if points is None else points
    return sweep_max(lambda x: max_norm(transformed(x) - np.asarray(Lam(x)) @ original(x)), pts)


def bpst_potential(chart: Chart | None = None) -> GaugePotential:
    """Unit-size SU(2) instanton on ℝ⁴: A_μ = (X†E_μ - E_μ†X) / (2(1 + |x|²)).

    X = x⁴ + Σ_k x^k(-iσ_k) is the quaternion of x, E_k = -iσ_k and E_4 = 1.
    Its curvature is (anti-)self-dual with respect to the Euclidean metric.
    """
    chart = chart or Chart.cube(4, -1.0, 1.0, name="R4")
    if chart.dim != 4:
        raise DegreeError("the instanton lives on a 4-dimensional chart")
    units = [-1j * s for s in PAULI] + [np.eye(2, dtype=complex)]

    def coeffs(x: np.ndarray) -> np.ndarray:
        X = x[3] * units[3] + sum(x[k] * units[k] for k in range(3))
        scale = 2.0 * (1.0 + float(x @ x))
        return np.array([(X.conj().T @ E - E.conj().T @ X) / scale for E in units])

    return GaugePotential(chart, 2, coeffs, "BPST", MatrixLieGroup.unitary(2, special=True))
