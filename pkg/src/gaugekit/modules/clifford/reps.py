"""Matrix representations of Clifford algebras."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import reduce

import numpy as np

from gaugekit.errors import SignatureError, UnsupportedError, ValidationError
from gaugekit.modules.algebra.lie import PAULI
from gaugekit.modules.clifford.algebra import (
    CliffordElement,
    Signature,
    left_multiplication_matrix,
)

logger = logging.getLogger(__name__)

MAX_CONSTRUCTED = 8

_I2 = np.eye(2, dtype=complex)
_X, _Y, _Z = PAULI


@dataclass(frozen=True, eq=False)
class MatrixRep:
    signature: Signature
    gammas: tuple[np.ndarray, ...]
    tag: str

    def __post_init__(self) -> None:
        gammas = tuple(np.asarray(g, dtype=complex) for g in self.gammas)
        if len(gammas) != self.signature.n:
            raise ValidationError(f"{len(gammas)} generators for signature {self.signature}")
        shapes = {g.shape for g in gammas}
        if len(shapes) > 1 or any(len(s) != 2 or s[0] != s[1] for s in shapes):
            raise ValidationError(f"generators must be equal-sized square matrices, got {shapes}")
        object.__setattr__(self, "gammas", gammas)

    @property
    def dim(self) -> int:
        return self.gammas[0].shape[0] if self.gammas else 1

    def relations_residual(self) -> float:
        """max |γ_i γ_j + γ_j γ_i + 2β(e_i, e_j) I|."""
        eta = self.signature.eta
        identity = np.eye(self.dim)
        worst = 0.0
        for i, j in itertools.product(range(self.signature.n), repeat=2):
            target = -2.0 * eta[i] * identity if i == j else 0.0
            anti = self.gammas[i] @ self.gammas[j] + self.gammas[j] @ self.gammas[i]
            worst = max(worst, float(np.max(np.abs(anti - target))))
        return worst

    def blade_matrix(self, mask: int) -> np.ndarray:
        factors = [self.gammas[k] for k in range(self.signature.n) if mask >> k & 1]
        return reduce(np.matmul, factors, np.eye(self.dim, dtype=complex))

    def is_faithful(self, tol: float = 1e-10) -> bool:
        images = np.array([self.blade_matrix(m).ravel() for m in range(self.signature.dim)])
        return int(np.linalg.matrix_rank(images, tol=tol)) == self.signature.dim


def rep_of(rep: MatrixRep, element: CliffordElement) -> np.ndarray:
    """Image of a Clifford element under the representation."""
    if element.signature != rep.signature:
        raise SignatureError(f"element signature {element.signature} vs rep {rep.signature}")
    out = np.zeros((rep.dim, rep.dim), dtype=complex)
    for mask, c in enumerate(element.coeffs):
        if c != 0:
            out += c * rep.blade_matrix(mask)
    return out


def pauli_rep() -> MatrixRep:
    """σ¹, σ², σ³ generate Cl(0,3): each squares to +1."""
    return MatrixRep(Signature(0, 3), PAULI, tag="pauli")


def _kron(*factors: np.ndarray) -> np.ndarray:
    return reduce(np.kron, factors, np.eye(1, dtype=complex))


def _hermitian_generators(n: int) -> list[np.ndarray]:
    """n mutually anticommuting hermitian matrices squaring to I (Jordan-Wigner)."""
    qubits = n // 2
    gens = []
    for j in range(qubits):
        head = [_Z] * j
        tail = [_I2] * (qubits - j - 1)
        gens.append(_kron(*head, _X, *tail))
        gens.append(_kron(*head, _Y, *tail))
    if n % 2:
        gens.append(_kron(*([_Z] * qubits)))
    return gens


def constructed_gamma_rep(sig: Signature) -> MatrixRep:
    """Complex rep of dimension 2^⌊n/2⌋ built from Kronecker products of Pauli matrices.

    Directions with e² = -1 get i·Γ (anti-hermitian), the others Γ
    (hermitian), so every generator is unitary.
    """
    if sig.n > MAX_CONSTRUCTED:
        raise UnsupportedError(f"constructed reps are limited to n <= {MAX_CONSTRUCTED}, got {sig.n}")
    gens = _hermitian_generators(sig.n)
    gammas = tuple(1j * g if eta > 0 else g for g, eta in zip(gens, sig.eta))
    rep = MatrixRep(sig, gammas, tag="constructed")
    residual = rep.relations_residual()
    if residual > 1e-12:
        raise ValidationError(f"constructed generators violate the Clifford relations by {residual:.3e}")
    logger.debug("Constructed %dx%d gamma rep for signature %s", rep.dim, rep.dim, sig)
    return rep


def left_regular_rep(sig: Signature) -> MatrixRep:
    """Left multiplication by the generators on the 2^n blade basis (real matrices)."""
    gammas = tuple(left_multiplication_matrix(CliffordElement.generator(sig, k)) for k in range(sig.n))
    return MatrixRep(sig, gammas, tag="left-regular")


def invariant_inner_product(rep: MatrixRep, seed_form: np.ndarray | None = None) -> np.ndarray:
    """Average a hermitian seed form over the finite group {±e_I}.

    For (n,0) each generator then acts anti-self-adjointly, for (0,n)
    self-adjointly; in both cases it acts isometrically.
    """
    sig = rep.signature
    if sig.r and sig.s:
        raise SignatureError(
            f"group averaging needs a definite signature, got {sig}; use the time-twisted pairing instead"
        )
    H0 = np.eye(rep.dim, dtype=complex) if seed_form is None else np.asarray(seed_form, dtype=complex)
    if np.max(np.abs(H0 - H0.conj().T)) > 1e-12:
        raise ValidationError("seed form must be hermitian")
    # ±e_I contribute identical terms, so averaging over masks is the group average
    total = np.zeros_like(H0)
    for mask in range(sig.dim):
        g = rep.blade_matrix(mask)
        total += g.conj().T @ H0 @ g
    return total / sig.dim


def adjointness_residuals(rep: MatrixRep, H: np.ndarray) -> tuple[float, float]:
    """(isometry residual, adjointness residual) of the generators against H.

    Adjointness means anti-self-adjoint for generators squaring to -1 and
    self-adjoint for those squaring to +1.
    """
    iso = adj = 0.0
    for gamma, eta in zip(rep.gammas, rep.signature.eta):
        iso = max(iso, float(np.max(np.abs(gamma.conj().T @ H @ gamma - H))))
        sign = -1.0 if eta > 0 else 1.0
        adj = max(adj, float(np.max(np.abs(gamma.conj().T @ H - sign * H @ gamma))))
    return iso, adj
