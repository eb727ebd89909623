"""Covariant derivatives of sections and their algebraic identities."""

from __future__ import annotations

import logging
from typing import Callable

import numpy as np

from gaugekit.modules.connections.curvature import curvature_linear
from gaugekit.modules.connections.gauge import gauge_transform
from gaugekit.modules.connections.types import LinearConnection, MatrixField, SectionField, VectorField
from gaugekit.numerics import default_step, directional, max_norm

logger = logging.getLogger(__name__)

ScalarField = Callable[[np.ndarray], complex]


def covariant_derivative(
    s: SectionField,
    conn: LinearConnection,
    X: VectorField,
    h: float | None = None,
) -> SectionField:
    """∇_X s = X(s) + Γ(X) s."""
    step = conn.chart.h if h is None else h

    def nabla(x: np.ndarray) -> np.ndarray:
        v = np.asarray(X(x), dtype=float)
        return directional(s, x, v, step) + conn.along(x, v) @ np.asarray(s(x))

    return nabla


def lie_bracket(X: VectorField, Y: VectorField, h: float | None = None) -> VectorField:
    """[X, Y]^i = X(Y^i) - Y(X^i)."""
    step = default_step() if h is None else h

    def bracket(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return directional(Y, x, np.asarray(X(x)), step) - directional(X, x, np.asarray(Y(x)), step)

    return bracket


def comcv_residual(
    conn: LinearConnection,
    X: VectorField,
    Y: VectorField,
    s: SectionField,
    x: np.ndarray,
    h: float | None = None,
) -> float:
    """|(∇_X∇_Y - ∇_Y∇_X - ∇_[X,Y]) s - R(X, Y) s| at x.

    Inner derivatives use step h, the outer ones √h.
    """
    inner = conn.chart.h if h is None else h
    outer = float(np.sqrt(inner))
    XY = covariant_derivative(covariant_derivative(s, conn, Y, inner), conn, X, outer)
    YX = covariant_derivative(covariant_derivative(s, conn, X, inner), conn, Y, outer)
    br = covariant_derivative(s, conn, lie_bracket(X, Y, inner), inner)
    R = curvature_linear(conn, inner)
    lhs = XY(x) - YX(x) - br(x)
    rhs = R.on_vectors(x, np.asarray(X(x)), np.asarray(Y(x))) @ np.asarray(s(x))
    return max_norm(lhs - rhs)


def scalar_leibniz_residual(
    conn: LinearConnection, f: ScalarField, s: SectionField, X: VectorField, x: np.ndarray
) -> float:
    """|∇_X(f s) - X(f) s - f ∇_X s| at x."""
    step = conn.chart.h
    fs = covariant_derivative(lambda y: f(y) * np.asarray(s(y)), conn, X)(x)
    Xf = directional(f, x, np.asarray(X(x)), step)
    return max_norm(fs - Xf * np.asarray(s(x)) - f(x) * covariant_derivative(s, conn, X)(x))


def dual_connection(conn: LinearConnection) -> LinearConnection:
    """Connection on F*: Γ*_i = -Γ_iᵀ, so that d⟨α, s⟩ = ⟨∇α, s⟩ + ⟨α, ∇s⟩."""
    return conn.with_coeffs(lambda x: -np.transpose(conn(x), (0, 2, 1)), name=f"{conn.name}*")


def tensor_connection(c1: LinearConnection, c2: LinearConnection) -> LinearConnection:
    """Γ_i = Γ1_i ⊗ 1 + 1 ⊗ Γ2_i on F1 ⊗ F2."""
    I1, I2 = np.eye(c1.fiber_dim), np.eye(c2.fiber_dim)

    def coeffs(x: np.ndarray) -> np.ndarray:
        return np.array([np.kron(a, I2) + np.kron(I1, b) for a, b in zip(c1(x), c2(x))])

    return LinearConnection(c1.chart, c1.fiber_dim * c2.fiber_dim, coeffs, name=f"{c1.name}⊗{c2.name}")


def dual_leibniz_residual(
    conn: LinearConnection, alpha: SectionField, s: SectionField, X: VectorField, x: np.ndarray
) -> float:
    """|X⟨α, s⟩ - ⟨∇*_X α, s⟩ - ⟨α, ∇_X s⟩| at x."""
    pairing = lambda y: np.asarray(alpha(y)) @ np.asarray(s(y))  # noqa: E731
    lhs = directional(pairing, x, np.asarray(X(x)), conn.chart.h)
    rhs = covariant_derivative(alpha, dual_connection(conn), X)(x) @ np.asarray(s(x))
    rhs = rhs + np.asarray(alpha(x)) @ covariant_derivative(s, conn, X)(x)
    return max_norm(lhs - rhs)


def tensor_leibniz_residual(
    c1: LinearConnection,
    c2: LinearConnection,
    s1: SectionField,
    s2: SectionField,
    X: VectorField,
    x: np.ndarray,
) -> float:
    """|∇_X(s1 ⊗ s2) - ∇_X s1 ⊗ s2 - s1 ⊗ ∇_X s2| at x."""
    product = lambda y: np.kron(s1(y), s2(y))  # noqa: E731
    lhs = covariant_derivative(product, tensor_connection(c1, c2), X)(x)
    rhs = np.kron(covariant_derivative(s1, c1, X)(x), s2(x)) + np.kron(s1(x), covariant_derivative(s2, c2, X)(x))
    return max_norm(lhs - rhs)


def section_gauge_covariance(
    conn: LinearConnection, phi: MatrixField, s: SectionField, X: VectorField, x: np.ndarray
) -> float:
    """|∇'_X(φ s) - φ ∇_X s| at x, with ∇' the gauge-transformed connection."""
    transformed = gauge_transform(conn, phi)
    lhs = covariant_derivative(lambda y: np.asarray(phi(y)) @ np.asarray(s(y)), transformed, X)(x)
    rhs = np.asarray(phi(x)) @ covariant_derivative(s, conn, X)(x)
    return max_norm(lhs - rhs)
