"""Matrix Lie groups and algebras: exp, Ad, bracket, BCH and representation derivatives."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np
from scipy.linalg import expm

from gaugekit.config import settings
from gaugekit.errors import SingularError, ValidationError

logger = logging.getLogger(__name__)

Representation = Callable[[np.ndarray], np.ndarray]

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


class GroupTag(str, Enum):
    GL = "gl"
    SL = "sl"
    O = "o"
    SO = "so"
    U = "u"
    SU = "su"


@dataclass(frozen=True)
class MatrixLieGroup:
    """A matrix group tag with its defining constraint.

    ``eta`` is the diagonal of the preserved form for the orthogonal tags.
    """

    tag: GroupTag
    dim: int
    eta: tuple[float, ...] = ()

    @classmethod
    def general_linear(cls, dim: int) -> MatrixLieGroup:
        return cls(GroupTag.GL, dim)

    @classmethod
    def special_linear(cls, dim: int) -> MatrixLieGroup:
        return cls(GroupTag.SL, dim)

    @classmethod
    def orthogonal(cls, r: int, s: int = 0, special: bool = True) -> MatrixLieGroup:
        tag = GroupTag.SO if special else GroupTag.O
        return cls(tag, r + s, (1.0,) * r + (-1.0,) * s)

    @classmethod
    def unitary(cls, dim: int, special: bool = False) -> MatrixLieGroup:
        return cls(GroupTag.SU if special else GroupTag.U, dim)

    @property
    def eta_matrix(self) -> np.ndarray:
        return np.diag(self.eta) if self.eta else np.eye(self.dim)

    def group_residual(self, g: np.ndarray) -> float:
        """Distance of ``g`` from satisfying the group constraint."""
        g = np.asarray(g)
        det = np.linalg.det(g)
        if self.tag in (GroupTag.O, GroupTag.SO):
            eta = self.eta_matrix
            res = np.linalg.norm(g @ eta @ g.T - eta)
        elif self.tag in (GroupTag.U, GroupTag.SU):
            res = np.linalg.norm(g @ g.conj().T - np.eye(self.dim))
        else:
            res = 0.0 if abs(det) > 0 else np.inf
        if self.tag in (GroupTag.SL, GroupTag.SO, GroupTag.SU):
            res += abs(det - 1.0)
        return float(res)

    def algebra_residual(self, L: np.ndarray) -> float:
        """Distance of ``L`` from the tagged Lie algebra."""
        L = np.asarray(L)
        if self.tag in (GroupTag.O, GroupTag.SO):
            eta = self.eta_matrix
            res = np.linalg.norm(L @ eta + eta @ L.T)
        elif self.tag in (GroupTag.U, GroupTag.SU):
            res = np.linalg.norm(L + L.conj().T)
        else:
            res = 0.0
        if self.tag in (GroupTag.SL, GroupTag.SU):
            res += abs(np.trace(L))
        return float(res)

    def project(self, L: np.ndarray) -> np.ndarray:
        """Nearest-ish algebra element: the constraint-respecting part of ``L``."""
        L = np.asarray(L)
        if self.tag in (GroupTag.O, GroupTag.SO):
            eta = self.eta_matrix
            P = 0.5 * (L - eta @ L.T @ eta)
        elif self.tag in (GroupTag.U, GroupTag.SU):
            P = 0.5 * (L - L.conj().T)
        else:
            P = L.copy()
        if self.tag in (GroupTag.SL, GroupTag.SU):
            P = P - np.trace(P) / self.dim * np.eye(self.dim)
        return P

    def random_algebra_element(self, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
        shape = (self.dim, self.dim)
        raw = rng.standard_normal(shape)
        if self.tag in (GroupTag.U, GroupTag.SU):
            raw = raw + 1j * rng.standard_normal(shape)
        return scale * self.project(raw)


def su2_basis() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Anti-hermitian basis τ_k = -iσ_k/2 with [τ_1, τ_2] = τ_3."""
    return tuple(-0.5j * s for s in PAULI)  # type: ignore[return-value]


def mat_exp(L: np.ndarray, t: float = 1.0) -> np.ndarray:
    """exp(tL) by scaling and squaring (scipy's Padé variant)."""
    L = np.asarray(L)
    if not np.all(np.isfinite(L)) or not np.isfinite(t):
        raise ValidationError("mat_exp needs finite entries")
    return expm(t * L)


def one_parameter_defect(L: np.ndarray, s: float, t: float) -> float:
    """‖exp(sL)exp(tL) - exp((s+t)L)‖."""
    return float(np.linalg.norm(mat_exp(L, s) @ mat_exp(L, t) - mat_exp(L, s + t)))


def checked_inverse(g: np.ndarray) -> np.ndarray:
    g = np.asarray(g)
    if np.linalg.cond(g) > 1e14:
        raise SingularError(f"matrix is singular to working precision (cond={np.linalg.cond(g):.3e})")
    return np.linalg.inv(g)


def adjoint(g: np.ndarray, L: np.ndarray) -> np.ndarray:
    """Ad_g L = g L g⁻¹."""
    return np.asarray(g) @ np.asarray(L) @ checked_inverse(g)


def bracket(L: np.ndarray, K: np.ndarray) -> np.ndarray:
    return L @ K - K @ L


def jacobi_residual(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> float:
    total = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))
    return float(np.max(np.abs(total)))


def bch3(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Baker-Campbell-Hausdorff series through third order."""
    ab = bracket(a, b)
    return a + b + 0.5 * ab + (bracket(a, ab) + bracket(b, bracket(b, a))) / 12.0


def bch_defect(a: np.ndarray, b: np.ndarray) -> float:
    """‖exp(a)exp(b) - exp(bch3(a, b))‖; fourth order in the input size."""
    return float(np.linalg.norm(mat_exp(a) @ mat_exp(b) - mat_exp(bch3(a, b))))


def rep_derivative(
    R: Representation,
    L: np.ndarray,
    h: float | None = None,
    richardson: bool = False,
) -> np.ndarray:
    """Differential of a representation at the identity, d/dt R(exp(tL)) at t = 0.

    Central difference with step ``h``; ``richardson`` combines steps h and h/2
    to cancel the h² term.
    """
    if h is None:
        h = float(settings.get("numerics", {}).get("step", 1e-5))
    if h <= 0 or h < 1e3 * np.finfo(float).eps:
        raise ValidationError(f"representation derivative step {h!r} underflows")

    def central(step: float) -> np.ndarray:
        return (R(mat_exp(L, step)) - R(mat_exp(L, -step))) / (2.0 * step)

    if not richardson:
        return central(h)
    return (4.0 * central(h / 2.0) - central(h)) / 3.0
