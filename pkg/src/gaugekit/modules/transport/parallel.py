"""Parallel transport along paths for linear connections and principal potentials."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from gaugekit.errors import ValidationError
from gaugekit.modules.algebra.lie import MatrixLieGroup, checked_inverse
from gaugekit.modules.connections.gauge import transition_linear
from gaugekit.modules.connections.types import GaugePotential, LinearConnection, MatrixField
from gaugekit.modules.transport.ordered import time_ordered_exp
from gaugekit.modules.transport.paths import Path
from gaugekit.numerics import max_norm

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TransportOperator:
    """Fiber map from the start of ``path`` to its end."""

    matrix: np.ndarray
    path: Path | None = None
    kind: str = "linear"
    group: MatrixLieGroup | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        M = np.asarray(self.matrix)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ValidationError(f"transport operator must be square, got shape {M.shape}")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __matmul__(self, other: TransportOperator) -> TransportOperator:
        """``self @ other``: transport along ``other`` first, then ``self``."""
        return TransportOperator(self.matrix @ other.matrix, None, self.kind, self.group)

    def apply(self, f: np.ndarray) -> np.ndarray:
        return self.matrix @ np.asarray(f)

    def inverse(self) -> TransportOperator:
        return TransportOperator(checked_inverse(self.matrix), None, self.kind, self.group)

    def distance(self, other: TransportOperator | np.ndarray) -> float:
        M = other.matrix if isinstance(other, TransportOperator) else np.asarray(other)
        return max_norm(self.matrix - M)

    def group_residual(self) -> float:
        """Distance from the tagged group, 0 when untagged."""
        return 0.0 if self.group is None else self.group.group_residual(self.matrix)


def _generator(conn: LinearConnection, path: Path):
    def A(t: float) -> np.ndarray:
        return -conn.along(path.point(t), path.velocity(t))

    return A


def parallel_transport_linear(
    conn: LinearConnection,
    path: Path,
    sampling: str | None = None,
    factor: str | None = None,
) -> TransportOperator:
    """P exp(-∫_C Γ): the ordered product of -Γ(x(t))(x'(t)) over [0, 1]."""
    if path.chart.dim != conn.n:
        raise ValidationError(f"path lives in {path.chart.dim} dimensions, connection in {conn.n}")
    path.check_inside()
    W = time_ordered_exp(_generator(conn, path), 0.0, 1.0, path.steps, sampling, factor)
    logger.debug("Transported %s along %s with %d steps", conn.name, path.name, path.steps)
    return TransportOperator(W, path, "linear")


def parallel_transport_principal(
    A: GaugePotential,
    path: Path,
    sampling: str | None = None,
    factor: str | None = None,
) -> TransportOperator:
    """Solution of dg/dt = -A(x(t))(x'(t)) g, g(0) = 1, tagged with A's group."""
    op = parallel_transport_linear(A, path, sampling, factor)
    return TransportOperator(op.matrix, path, "principal", A.group)


def transport_transition_residual(
    conn: LinearConnection,
    g_VU: MatrixField,
    path: Path,
    h: float | None = None,
) -> float:
    """‖T_V - g_VU(x₁) T_U g_VU(x₀)⁻¹‖ with Γ_V the transition of Γ_U by g_VU."""
    T_U = parallel_transport_linear(conn, path).matrix
    T_V = parallel_transport_linear(transition_linear(conn, g_VU, h), path).matrix
    g0 = np.asarray(g_VU(path.start))
    g1 = np.asarray(g_VU(path.end))
    return max_norm(T_V - g1 @ T_U @ checked_inverse(g0))


def unitarity_defect(T: TransportOperator | np.ndarray) -> float:
    M = T.matrix if isinstance(T, TransportOperator) else np.asarray(T)
    return max_norm(M.conj().T @ M - np.eye(M.shape[0]))
