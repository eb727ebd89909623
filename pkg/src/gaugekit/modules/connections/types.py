"""Local connection data on a chart.

Matrix-valued 1-forms are closures ``x -> array (n, m, m)`` holding the
coefficient Γ_i of dx^i, so Γ(X) = Σ_i X^i Γ_i. Curvature is stored as the
full antisymmetric array ``(n, n, m, m)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from gaugekit.config import tolerance
from gaugekit.errors import SingularError, ValidationError
from gaugekit.modules.algebra.lie import MatrixLieGroup
from gaugekit.modules.forms.charts import Chart
from gaugekit.modules.forms.exterior import PForm, basis

logger = logging.getLogger(__name__)

MatrixField = Callable[[np.ndarray], np.ndarray]
SectionField = Callable[[np.ndarray], np.ndarray]
VectorField = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class LinearConnection:
    """End(F)-valued 1-form on a chart."""

    chart: Chart
    fiber_dim: int
    coeffs: MatrixField
    name: str = "Γ"

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = self.chart.require(x)
        G = np.asarray(self.coeffs(x))
        expected = (self.chart.dim, self.fiber_dim, self.fiber_dim)
        if G.shape != expected:
            raise ValidationError(f"{self.name}: coefficients have shape {G.shape}, expected {expected}")
        if not np.all(np.isfinite(G)):
            raise ValidationError(f"{self.name}: non-finite coefficients at {x}")
        return G

    @property
    def n(self) -> int:
        return self.chart.dim

    def along(self, x: np.ndarray, X: np.ndarray) -> np.ndarray:
        """Γ(X) at x."""
        return np.tensordot(np.asarray(X), self(x), axes=(0, 0))

    def as_form(self) -> PForm:
        return PForm(self.chart, 1, self, (self.fiber_dim, self.fiber_dim))

    def with_coeffs(self, coeffs: MatrixField, name: str | None = None) -> LinearConnection:
        return LinearConnection(self.chart, self.fiber_dim, coeffs, name or self.name)

    @classmethod
    def zero(cls, chart: Chart, fiber_dim: int) -> LinearConnection:
        zeros = np.zeros((chart.dim, fiber_dim, fiber_dim))
        return cls(chart, fiber_dim, lambda x: zeros, "0")

    @classmethod
    def constant(cls, chart: Chart, matrices: Sequence[np.ndarray], name: str = "Γ") -> LinearConnection:
        stack = np.array(matrices)
        return cls(chart, stack.shape[1], lambda x: stack, name)


@dataclass(frozen=True, eq=False)
class GaugePotential(LinearConnection):
    """Lie-algebra valued potential; ``group`` tags the algebra it should lie in."""

    group: MatrixLieGroup | None = None
    name: str = "A"

    def with_coeffs(self, coeffs: MatrixField, name: str | None = None) -> GaugePotential:
        return GaugePotential(self.chart, self.fiber_dim, coeffs, name or self.name, self.group)

    def algebra_residual(self, points: np.ndarray | None = None) -> float:
        if self.group is None:
            return 0.0
        pts = self.chart.grid() if points is None else points
        return max(self.group.algebra_residual(Ai) for x in pts for Ai in self(x))

    def check_algebra(self, points: np.ndarray | None = None, tol: float | None = None) -> None:
        tol = tolerance("geometric") if tol is None else tol
        res = self.algebra_residual(points)
        if res > tol:
            tag = self.group.tag.value if self.group else "?"
            raise ValidationError(f"{self.name}: components leave {tag}({self.fiber_dim}) by {res:.3e}")

    @classmethod
    def zero(cls, chart: Chart, fiber_dim: int, group: MatrixLieGroup | None = None) -> GaugePotential:
        zeros = np.zeros((chart.dim, fiber_dim, fiber_dim), dtype=complex)
        return cls(chart, fiber_dim, lambda x: zeros, "0", group)

    @classmethod
    def constant(
        cls, chart: Chart, matrices: Sequence[np.ndarray], name: str = "A", group: MatrixLieGroup | None = None
    ) -> GaugePotential:
        stack = np.array(matrices)
        return cls(chart, stack.shape[1], lambda x: stack, name, group)

    @classmethod
    def from_connection(cls, conn: LinearConnection, group: MatrixLieGroup | None = None) -> GaugePotential:
        return cls(conn.chart, conn.fiber_dim, conn.coeffs, conn.name, group)


@dataclass(frozen=True, eq=False)
class GeneralConnection:
    """Γ(x, f): T_xU → T_fF as an (m × n) matrix, for a fiber with coordinates f ∈ ℝ^m."""

    chart: Chart
    fiber_dim: int
    gamma: Callable[[np.ndarray, np.ndarray], np.ndarray]
    name: str = "Γ"

    def __call__(self, x: np.ndarray, f: np.ndarray) -> np.ndarray:
        x = self.chart.require(x)
        G = np.asarray(self.gamma(x, np.asarray(f)))
        if G.shape != (self.fiber_dim, self.chart.dim):
            raise ValidationError(f"{self.name}: Γ(x, f) has shape {G.shape}, expected ({self.fiber_dim}, {self.chart.dim})")
        return G

    @classmethod
    def from_linear(cls, conn: LinearConnection) -> GeneralConnection:
        """Γ(x, f) = Γ(x) f, column i being Γ_i f."""
        return cls(conn.chart, conn.fiber_dim, lambda x, f: np.einsum("iab,b->ai", conn(x), f), conn.name)


@dataclass(frozen=True, eq=False)
class FiberMap:
    """Fiber diffeomorphism h(x, ·) with its inverse, used for general transitions."""

    forward: Callable[[np.ndarray, np.ndarray], np.ndarray]
    inverse: Callable[[np.ndarray, np.ndarray], np.ndarray]

    @classmethod
    def linear(cls, M: MatrixField) -> FiberMap:
        def inverse(x: np.ndarray, f: np.ndarray) -> np.ndarray:
            Mx = np.asarray(M(x))
            if abs(np.linalg.det(Mx)) < 1e-14:
                raise SingularError(f"fiber map is singular at {x}")
            return np.linalg.solve(Mx, f)

        return cls(lambda x, f: np.asarray(M(x)) @ f, inverse)


@dataclass(frozen=True, eq=False)
class CurvatureForm:
    chart: Chart
    fiber_dim: int
    field: Callable[[np.ndarray], np.ndarray]
    name: str = "F"

    def __call__(self, x: np.ndarray) -> np.ndarray:
        """Full antisymmetric array F[i, j] of shape (n, n, m, m)."""
        F = np.asarray(self.field(self.chart.require(x)))
        n, m = self.chart.dim, self.fiber_dim
        if F.shape != (n, n, m, m):
            raise ValidationError(f"{self.name}: curvature has shape {F.shape}, expected {(n, n, m, m)}")
        return F

    def on_vectors(self, x: np.ndarray, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """F(X, Y) = Σ X^i Y^j F_ij."""
        return np.einsum("i,j,ijab->ab", X, Y, self(x))

    def antisymmetry_residual(self, x: np.ndarray) -> float:
        F = self(x)
        return float(np.max(np.abs(F + F.transpose(1, 0, 2, 3))))

    def as_form(self) -> PForm:
        pairs = basis(self.chart.dim, 2)
        return PForm(
            self.chart,
            2,
            lambda x: np.array([self.field(x)[i, j] for i, j in pairs]).reshape(len(pairs), self.fiber_dim, self.fiber_dim),
            (self.fiber_dim, self.fiber_dim),
        )
