"""Levi-Civita connection from a metric, in a coordinate frame or an n-bein; torsion."""

from __future__ import annotations

import logging
from typing import Callable

import numpy as np

from gaugekit.errors import SignatureError, ValidationError
from gaugekit.modules.algebra.lie import checked_inverse
from gaugekit.modules.connections.derivatives import covariant_derivative, lie_bracket
from gaugekit.modules.connections.types import LinearConnection, VectorField
from gaugekit.modules.forms.charts import MetricField
from gaugekit.numerics import directional, gradient, max_norm, sweep_max

logger = logging.getLogger(__name__)

FrameField = Callable[[np.ndarray], np.ndarray]


def christoffel(g: MetricField, x: np.ndarray, h: float | None = None) -> np.ndarray:
    """Γ[j, i, k] = Γ^i_jk = ½ g^il (∂_j g_lk + ∂_k g_lj - ∂_l g_jk)."""
    step = g.chart.h if h is None else h
    dg = gradient(g, x, step)  # dg[m, a, b] = ∂_m g_ab
    g_inv = checked_inverse(g(x))
    lower = 0.5 * (
        np.einsum("jlk->jlk", dg)  # ∂_j g_lk
        + np.einsum("klj->jlk", dg)  # ∂_k g_lj
        - np.einsum("ljk->jlk", dg)  # ∂_l g_jk
    )
    return np.einsum("il,jlk->jik", g_inv, lower)


def levi_civita_coordinate(g: MetricField, h: float | None = None) -> LinearConnection:
    return LinearConnection(g.chart, g.chart.dim, lambda x: christoffel(g, x, h), name="LC")


def structure_functions(frame: FrameField, x: np.ndarray, h: float) -> np.ndarray:
    """C[l, b, c] with [e_b, e_c] = C^l_bc e_l for the columns e_a of ``frame``."""
    E = np.asarray(frame(x), dtype=float)
    E_inv = checked_inverse(E)
    n = E.shape[0]
    C = np.zeros((n, n, n))
    for b in range(n):
        for c in range(b + 1, n):
            br = lie_bracket(lambda y, b=b: frame(y)[:, b], lambda y, c=c: frame(y)[:, c], h)(x)
            C[:, b, c] = E_inv @ br
            C[:, c, b] = -C[:, b, c]
    return C


def frame_eta(g: MetricField, frame: FrameField, x: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """Diagonal of g(e_a, e_b); raises unless the frame is orthonormal at x."""
    E = np.asarray(frame(x), dtype=float)
    gram = E.T @ g(x) @ E
    eta = np.diag(gram)
    if max_norm(gram - np.diag(eta)) > tol or max_norm(np.abs(eta) - 1.0) > tol:
        raise SignatureError(f"frame is not orthonormal at {x}: Gram matrix {gram}")
    return np.sign(eta)


def levi_civita_nbein(g: MetricField, frame: FrameField, h: float | None = None) -> LinearConnection:
    """Coordinate symbols assembled from the frame connection.

    ω^i_jk = ½ η^il (C_ljk - C_kjl - C_jkl) with C_abc = η_al C^l_bc gives
    ∇_{e_j} e_k = ω^i_jk e_i; then Γ(X) = E ω(X) E⁻¹ - X(E) E⁻¹.
    """
    step = g.chart.h if h is None else h
    n = g.chart.dim

    def coeffs(x: np.ndarray) -> np.ndarray:
        E = np.asarray(frame(x), dtype=float)
        E_inv = checked_inverse(E)
        eta = frame_eta(g, frame, x)
        C = np.einsum("a,abc->abc", eta, structure_functions(frame, x, step))
        lowered = 0.5 * (C - np.einsum("kjl->ljk", C) - np.einsum("jkl->ljk", C))  # [l, j, k]
        omega = np.einsum("i,ijk->jik", eta, lowered)  # omega[j] = ω(e_j), entries [i, k]
        dE = gradient(frame, x, step)  # dE[m] = ∂_m E
        out = np.empty((n, n, n))
        for m in range(n):
            w = np.tensordot(E_inv[:, m], omega, axes=(0, 0))  # ω(∂_m)
            out[m] = E @ w @ E_inv - dE[m] @ E_inv
        return out

    return LinearConnection(g.chart, n, coeffs, name="LC(e)")


def levi_civita(g: MetricField, frame: FrameField | None = None, h: float | None = None) -> LinearConnection:
    """Torsion-free metric connection, by the coordinate formula or from an orthonormal frame."""
    if frame is None:
        return levi_civita_coordinate(g, h)
    return levi_civita_nbein(g, frame, h)


def torsion(conn: LinearConnection, X: VectorField, Y: VectorField) -> VectorField:
    """T(X, Y) = Γ(X) Y - Γ(Y) X in a coordinate frame."""
    if conn.fiber_dim != conn.n:
        raise ValidationError(f"torsion needs a tangent-bundle connection, got fiber {conn.fiber_dim} over {conn.n}")

    def T(x: np.ndarray) -> np.ndarray:
        Xv, Yv = np.asarray(X(x)), np.asarray(Y(x))
        return conn.along(x, Xv) @ Yv - conn.along(x, Yv) @ Xv

    return T


def torsion_residual(conn: LinearConnection, points: np.ndarray | None = None) -> float:
    """max |Γ^i_jk - Γ^i_kj| over sample points."""
    if conn.fiber_dim != conn.n:
        raise ValidationError(f"torsion needs a tangent-bundle connection, got fiber {conn.fiber_dim} over {conn.n}")
    pts = conn.chart.grid() if points is None else points
    return sweep_max(lambda x: max_norm(conn(x) - np.transpose(conn(x), (2, 1, 0))), pts)


def metric_compatibility_residual(
    conn: LinearConnection,
    g: MetricField,
    X: VectorField,
    Y: VectorField,
    Z: VectorField,
    points: np.ndarray | None = None,
) -> float:
    """max |X(g(Y, Z)) - g(∇_X Y, Z) - g(Y, ∇_X Z)| over sample points."""
    gYZ = lambda y: np.asarray(Y(y)) @ g(y) @ np.asarray(Z(y))  # noqa: E731
    nXY = covariant_derivative(Y, conn, X)
    nXZ = covariant_derivative(Z, conn, X)

    def residual(x: np.ndarray) -> float:
        lhs = directional(gYZ, x, np.asarray(X(x)), g.chart.h)
        rhs = nXY(x) @ g(x) @ np.asarray(Z(x)) + np.asarray(Y(x)) @ g(x) @ nXZ(x)
        return max_norm(lhs - rhs)

    pts = conn.chart.grid() if points is None else points
    return sweep_max(residual, pts)


def metric_compatibility_tensor(conn: LinearConnection, g: MetricField, points: np.ndarray | None = None) -> float:
    """max |∂_j g_ik - Γ^l_ji g_lk - Γ^l_jk g_il| over sample points."""

    def residual(x: np.ndarray) -> float:
        G = conn(x)  # G[j, l, i] = Γ^l_ji
        gx = g(x)
        dg = gradient(g, x, g.chart.h)
        term = np.einsum("jli,lk->jik", G, gx) + np.einsum("jlk,il->jik", G, gx)
        return max_norm(dg - term)

    pts = conn.chart.grid() if points is None else points
    return sweep_max(residual, pts)
