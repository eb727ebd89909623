"""Structure group of the bundle of connections: triples (J, g, L_1..L_n).

Elements act on connection coefficients K_1..K_n (Lie algebra valued) by

    K'_i = Σ_j (J⁻ᵀ)_ij (Ad_g K_j + L_j)

and the product is fixed by requiring this to be a left action:

    (J, g, L)(J', g', L') = (J J', g g', Ad_g L'_i + Σ_j (J'ᵀ)_ij L_j).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from gaugekit.errors import ValidationError
from gaugekit.modules.algebra.lie import checked_inverse

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ConnectionBundleGroupElement:
    J: np.ndarray
    g: np.ndarray
    L: np.ndarray

    def __post_init__(self) -> None:
        J = np.asarray(self.J, dtype=float)
        g = np.asarray(self.g)
        L = np.asarray(self.L)
        n = J.shape[0]
        if J.shape != (n, n):
            raise ValidationError(f"J must be square, got {J.shape}")
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise ValidationError(f"g must be a square matrix, got {g.shape}")
        if L.shape != (n, *g.shape):
            raise ValidationError(f"L must stack {n} matrices of shape {g.shape}, got {L.shape}")
        checked_inverse(J)
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "L", L)

    @property
    def n(self) -> int:
        return self.J.shape[0]


def _ad(g: np.ndarray, stack: np.ndarray) -> np.ndarray:
    return np.einsum("ab,ibc,cd->iad", g, stack, checked_inverse(g))


def _mix(M: np.ndarray, stack: np.ndarray) -> np.ndarray:
    """(M stack)_i = Σ_j M_ij stack_j."""
    return np.einsum("ij,jab->iab", M, stack)


def cbg_identity(n: int, g_dim: int) -> ConnectionBundleGroupElement:
    return ConnectionBundleGroupElement(np.eye(n), np.eye(g_dim), np.zeros((n, g_dim, g_dim)))


def cbg_mul(a: ConnectionBundleGroupElement, b: ConnectionBundleGroupElement) -> ConnectionBundleGroupElement:
    if a.n != b.n or a.g.shape != b.g.shape:
        raise ValidationError(f"incompatible elements: n={a.n}/{b.n}, g {a.g.shape}/{b.g.shape}")
    return ConnectionBundleGroupElement(a.J @ b.J, a.g @ b.g, _ad(a.g, b.L) + _mix(b.J.T, a.L))


def cbg_inverse(a: ConnectionBundleGroupElement) -> ConnectionBundleGroupElement:
    J_inv = checked_inverse(a.J)
    g_inv = checked_inverse(a.g)
    return ConnectionBundleGroupElement(J_inv, g_inv, -_ad(g_inv, _mix(J_inv.T, a.L)))


def cbg_act(a: ConnectionBundleGroupElement, K: np.ndarray) -> np.ndarray:
    K = np.asarray(K)
    if K.shape != a.L.shape:
        raise ValidationError(f"connection coefficients of shape {K.shape} vs {a.L.shape}")
    return _mix(checked_inverse(a.J).T, _ad(a.g, K) + a.L)


def cbg_distance(a: ConnectionBundleGroupElement, b: ConnectionBundleGroupElement) -> float:
    return float(
        max(np.max(np.abs(a.J - b.J)), np.max(np.abs(a.g - b.g)), np.max(np.abs(a.L - b.L)) if a.L.size else 0.0)
    )
