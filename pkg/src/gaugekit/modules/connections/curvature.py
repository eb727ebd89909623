"""Curvature of general, linear and principal connections; exterior covariant derivative.

The bracket convention has no factor ½:

    F = dA + [A, A],   F_ij = ∂_i A_j - ∂_j A_i + [A_i, A_j].
"""

from __future__ import annotations

import logging
from typing import Callable

import numpy as np

from gaugekit.errors import DegreeError, ValidationError
from gaugekit.modules.connections.types import CurvatureForm, GaugePotential, GeneralConnection, LinearConnection
from gaugekit.modules.forms.exterior import PForm, ext_d, wedge
from gaugekit.numerics import gradient, max_norm, nested_step, sweep_max

logger = logging.getLogger(__name__)


def curvature_linear(conn: LinearConnection, h: float | None = None) -> CurvatureForm:
    """R(X, Y) = dΓ(X, Y) + [Γ(X), Γ(Y)]."""
    step = conn.chart.h if h is None else h

    def field(x: np.ndarray) -> np.ndarray:
        G = conn(x)
        dG = gradient(conn, x, step)  # dG[i, j] = ∂_i Γ_j
        F = dG - dG.transpose(1, 0, 2, 3)
        F = F + np.einsum("iab,jbc->ijac", G, G) - np.einsum("jab,ibc->ijac", G, G)
        return F

    return CurvatureForm(conn.chart, conn.fiber_dim, field, name=f"R[{conn.name}]")


def curvature_principal(A: GaugePotential, h: float | None = None) -> CurvatureForm:
    """F = dA + [A, A] for a gauge potential."""
    F = curvature_linear(A, h)
    return CurvatureForm(F.chart, F.fiber_dim, F.field, name=f"F[{A.name}]")


def curvature_general(
    conn: GeneralConnection, h: float | None = None
) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    """R^a_ij(x, f) = ∂_i Γ^a_j - ∂_j Γ^a_i + Σ_b (∂_b Γ^a_i Γ^b_j - ∂_b Γ^a_j Γ^b_i).

    ∂_i differentiates in the chart, ∂_b along the fiber. Returns a closure
    ``(x, f) -> array (n, n, m)``.
    """
    step = conn.chart.h if h is None else h

    def R(x: np.ndarray, f: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        f = np.asarray(f, dtype=float)
        G = conn(x, f)  # (m, n)
        dx = gradient(lambda y: conn(y, f), x, step)  # dx[i, a, j] = ∂_i Γ^a_j
        df = gradient(lambda u: conn(x, u), f, step)  # df[b, a, i] = ∂_b Γ^a_i
        lin = np.einsum("iaj->ija", dx)
        cross = np.einsum("bai,bj->ija", df, G)
        return lin - lin.transpose(1, 0, 2) + cross - cross.transpose(1, 0, 2)

    return R


def _adjoint_bracket(conn: LinearConnection, a: PForm) -> PForm:
    """[Γ ∧ a] = Γ∧a - (-1)^p a∧Γ for End(F)-valued a."""
    G = conn.as_form()
    sign = -1 if a.degree % 2 else 1
    return wedge(G, a) - sign * wedge(a, G)


def cov_ext_d(a: PForm, conn: LinearConnection, adjoint: bool = False, h: float | None = None) -> PForm:
    """d_Γ a = da + Γ∧a on F-valued forms, or da + [Γ∧a] on End(F)-valued forms.

    ``a`` must have degree below the chart dimension: there are no (n+1)-forms
    on an n-dimensional chart, so a top-degree ``a`` raises ``DegreeError``.
    """
    if a.degree >= a.n:
        raise DegreeError(f"d_Γ of a {a.degree}-form on a {a.n}-dimensional chart has no target degree")
    m = conn.fiber_dim
    expected = (m, m) if adjoint else (m,)
    if a.value_shape != expected:
        raise ValidationError(f"cov_ext_d expects values of shape {expected}, got {a.value_shape}")
    da = ext_d(a, h)
    if adjoint:
        return da + _adjoint_bracket(conn, a)
    return da + wedge(conn.as_form(), a)


def bianchi_residual(conn: LinearConnection, points: np.ndarray | None = None, h: float | None = None) -> float:
    """max |(d_Γ R)_ijk| over sample points; the outer derivative uses the nested step."""
    if conn.n < 3:
        return 0.0
    R = curvature_linear(conn).as_form()
    dR = cov_ext_d(R, conn, adjoint=True, h=nested_step() * conn.chart.diameter if h is None else h)
    pts = conn.chart.grid() if points is None else points
    return sweep_max(lambda x: max_norm(dR(x)), pts)


def second_covariant_residual(
    s: PForm, conn: LinearConnection, points: np.ndarray | None = None, h: float | None = None
) -> float:
    """max |d_Γ² s - R s| for a section s given as an F-valued 0-form."""
    if s.degree != 0:
        raise ValidationError("d_Γ² = R is checked on sections (0-forms)")
    outer = nested_step() * conn.chart.diameter if h is None else h
    dds = cov_ext_d(cov_ext_d(s, conn), conn, h=outer)
    R = curvature_linear(conn).as_form()
    Rs = wedge(R, s)
    pts = conn.chart.grid() if points is None else points
    return sweep_max(lambda x: max_norm(dds(x) - Rs(x)), pts)
