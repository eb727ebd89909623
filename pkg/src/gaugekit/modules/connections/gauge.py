"""Transition laws and gauge transformations of local connection data.

Principal potentials, linear connections and associated connections all
transform as

    A' = φ A φ⁻¹ - dφ φ⁻¹

whether φ is a transition function g_VU or a gauge transformation φ_U.
"""

from __future__ import annotations

import logging
from typing import Callable

import numpy as np

from gaugekit.modules.algebra.lie import checked_inverse, mat_exp
from gaugekit.modules.connections.curvature import curvature_linear
from gaugekit.modules.connections.types import (
    FiberMap,
    GaugePotential,
    GeneralConnection,
    LinearConnection,
    MatrixField,
)
from gaugekit.modules.forms.charts import Chart
from gaugekit.numerics import gradient, max_norm, sweep_max

logger = logging.getLogger(__name__)

AlgebraRep = Callable[[np.ndarray], np.ndarray]


def _conjugate(conn: LinearConnection, phi: MatrixField, h: float | None) -> MatrixField:
    step = conn.chart.h if h is None else h

    def coeffs(x: np.ndarray) -> np.ndarray:
        P = np.asarray(phi(x))
        P_inv = checked_inverse(P)
        dP = gradient(phi, x, step)
        return np.einsum("ab,ibc,cd->iad", P, conn(x), P_inv) - dP @ P_inv

    return coeffs


def gauge_transform(A: LinearConnection, phi: MatrixField, h: float | None = None) -> LinearConnection:
    """A ↦ φ A φ⁻¹ - dφ φ⁻¹. Transforming by φ then ψ equals transforming by ψφ."""
    return A.with_coeffs(_conjugate(A, phi, h), name=f"{A.name}^φ")


def transition_potential(A_U: GaugePotential, g_VU: MatrixField, h: float | None = None) -> GaugePotential:
    """A_V = g_VU A_U g_VU⁻¹ - dg_VU g_VU⁻¹ on U ∩ V (expressed on U's chart)."""
    return A_U.with_coeffs(_conjugate(A_U, g_VU, h), name=f"{A_U.name}_V")


def transition_linear(conn: LinearConnection, M: MatrixField, h: float | None = None) -> LinearConnection:
    """Γ_V = M Γ_U M⁻¹ - dM M⁻¹ for fiber maps f ↦ M(x) f."""
    return conn.with_coeffs(_conjugate(conn, M, h), name=f"{conn.name}_V")


def pure_gauge(chart: Chart, phi: MatrixField, fiber_dim: int, h: float | None = None) -> GaugePotential:
    """-dφ φ⁻¹, the gauge transform of A = 0."""
    return gauge_transform(GaugePotential.zero(chart, fiber_dim), phi, h)


def transition_general(conn: GeneralConnection, fiber_map: FiberMap, h: float | None = None) -> GeneralConnection:
    """Γ_V(x, f) = d₂h(x, f_U) Γ_U(x, f_U) - d₁h(x, f_U) with f_U = h⁻¹(x, f)."""
    step = conn.chart.h if h is None else h

    def gamma(x: np.ndarray, f: np.ndarray) -> np.ndarray:
        f_u = np.asarray(fiber_map.inverse(x, f), dtype=float)
        d1 = gradient(lambda y: fiber_map.forward(y, f_u), x, step).T
        d2 = gradient(lambda u: fiber_map.forward(x, u), f_u, step).T
        checked_inverse(d2)
        return d2 @ conn(x, f_u) - d1

    return GeneralConnection(conn.chart, conn.fiber_dim, gamma, name=f"{conn.name}_V")


def inverse_fiber_map(fiber_map: FiberMap) -> FiberMap:
    return FiberMap(fiber_map.inverse, fiber_map.forward)


def associated_connection(A: GaugePotential, rep: AlgebraRep, dim: int) -> LinearConnection:
    """Γ_i = 𝔯(A_i) on the associated vector bundle."""
    return LinearConnection(A.chart, dim, lambda x: np.array([rep(Ai) for Ai in A(x)]), name=f"𝔯({A.name})")


def transition_associated_residual(
    A: GaugePotential,
    g_VU: MatrixField,
    group_rep: Callable[[np.ndarray], np.ndarray],
    algebra_rep: AlgebraRep,
    dim: int,
    points: np.ndarray | None = None,
) -> float:
    """Compare 𝔯(A_V) with the linear transition of 𝔯(A_U) by R(g_VU).

    Agreement holds when 𝔯 is the differential of R.
    """
    via_potential = associated_connection(transition_potential(A, g_VU), algebra_rep, dim)
    via_bundle = transition_linear(associated_connection(A, algebra_rep, dim), lambda x: group_rep(g_VU(x)))
    pts = A.chart.grid() if points is None else points
    return sweep_max(lambda x: max_norm(via_potential(x) - via_bundle(x)), pts)


def infinitesimal_gauge(A: LinearConnection, theta: MatrixField, h: float | None = None) -> LinearConnection:
    """δA = [θ, A] - dθ."""
    step = A.chart.h if h is None else h

    def coeffs(x: np.ndarray) -> np.ndarray:
        T = np.asarray(theta(x))
        Ax = A(x)
        return T @ Ax - Ax @ T - gradient(theta, x, step)

    return A.with_coeffs(coeffs, name=f"δ{A.name}")


def infinitesimal_gauge_defect(A: LinearConnection, theta: MatrixField, t: float, x: np.ndarray) -> float:
    """|(A^{exp(tθ)} - A)/t - δA| at x, which is O(t)."""
    transformed = gauge_transform(A, lambda y: mat_exp(np.asarray(theta(y)), t))
    delta = infinitesimal_gauge(A, theta)
    return max_norm((transformed(x) - A(x)) / t - delta(x))


def curvature_covariance_check(
    A: LinearConnection, phi: MatrixField, points: np.ndarray | None = None, h: float | None = None
) -> float:
    """max |F(A^φ) - φ F(A) φ⁻¹| over sample points."""
    F = curvature_linear(A, h)
    F_phi = curvature_linear(gauge_transform(A, phi, h), h)

    def residual(x: np.ndarray) -> float:
        P = np.asarray(phi(x))
        expected = np.einsum("ab,ijbc,cd->ijad", P, F(x), checked_inverse(P))
        return max_norm(F_phi(x) - expected)

    pts = A.chart.grid() if points is None else points
    return sweep_max(residual, pts)
