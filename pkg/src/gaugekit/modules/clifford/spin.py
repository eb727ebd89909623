"""Pin/Spin elements and the twisted adjoint action."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import reduce

import numpy as np

from gaugekit.errors import SingularError, ValidationError
from gaugekit.modules.clifford.algebra import (
    CliffordElement,
    Signature,
    alpha,
    reverse,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PinElement:
    """Clifford product v_1 v_2 ... v_p of vectors with q(v_i) = ±1."""

    signature: Signature
    factors: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        factors = tuple(np.asarray(v, dtype=float) for v in self.factors)
        for k, v in enumerate(factors):
            if v.shape != (self.signature.n,):
                raise ValidationError(f"factor {k} has shape {v.shape}, expected ({self.signature.n},)")
            if abs(abs(self.signature.q(v)) - 1.0) > 1e-10:
                raise ValidationError(f"factor {k} has q(v) = {self.signature.q(v):.6g}, expected ±1")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def identity(cls, sig: Signature) -> PinElement:
        return cls(sig, ())

    @property
    def element(self) -> CliffordElement:
        start = CliffordElement.scalar(self.signature)
        return reduce(
            lambda acc, v: acc * CliffordElement.vector(self.signature, v),
            self.factors,
            start,
        )

    @property
    def is_spin(self) -> bool:
        return len(self.factors) % 2 == 0

    @property
    def norm_product(self) -> float:
        """Π q(v_i)."""
        return float(np.prod([self.signature.q(v) for v in self.factors])) if self.factors else 1.0

    def negated(self) -> PinElement:
        """-φ as a vector product, by flipping the first factor.

        The empty product has no such form; use ``-phi.element`` there.
        """
        if not self.factors:
            raise ValidationError("-1 needs at least one factor; use two equal factors with q = -1 explicitly")
        first, *rest = self.factors
        return PinElement(self.signature, (-first, *rest))

    def inverse(self) -> CliffordElement:
        """φ⁻¹ = reverse(φ) / Π(-q(v_i)), since v² = -q(v)."""
        scale = float(np.prod([-self.signature.q(v) for v in self.factors])) if self.factors else 1.0
        if scale == 0:
            raise SingularError("null factor in Pin element")
        return reverse(self.element) / scale


def _twisted_action(
    twisted: CliffordElement, inverse: CliffordElement, w: np.ndarray, tol: float
) -> np.ndarray:
    sig = twisted.signature
    result = twisted * CliffordElement.vector(sig, w) * inverse
    residue = result - CliffordElement.vector(sig, result.vector_part())
    if np.max(np.abs(residue.coeffs)) > tol:
        raise ValidationError(
            f"twisted adjoint left V: non-vector residue {np.max(np.abs(residue.coeffs)):.3e}"
        )
    return np.real_if_close(result.vector_part(), tol=1000)


def twisted_adjoint(phi: PinElement, w: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Ad~_φ(w) = α(φ) w φ⁻¹, returned as a vector."""
    return _twisted_action(alpha(phi.element), phi.inverse(), w, tol)


def reflection(v: np.ndarray, w: np.ndarray, sig: Signature) -> np.ndarray:
    """w - 2β(w, v)/q(v) · v."""
    v = np.asarray(v, dtype=float)
    qv = sig.q(v)
    if qv == 0:
        raise SingularError("cannot reflect in a null vector")
    return np.asarray(w, dtype=float) - 2.0 * sig.beta(w, v) / qv * v


def pin_to_orthogonal(phi: PinElement) -> np.ndarray:
    """Matrix of Ad~_φ on V; columns are the images of e_1, ..., e_n."""
    n = phi.signature.n
    return np.column_stack([np.real(twisted_adjoint(phi, np.eye(n)[k])) for k in range(n)])


def orthogonality_residual(M: np.ndarray, sig: Signature) -> float:
    eta = sig.eta_matrix
    return float(np.max(np.abs(M @ eta @ M.T - eta)))


def sign_defect(phi: PinElement) -> float:
    """max |Ad~_φ - Ad~_{-φ}| on the basis vectors, with -φ taken in the algebra."""
    n = phi.signature.n
    twisted, inverse = alpha(-phi.element), -phi.inverse()
    M_neg = np.column_stack([np.real(_twisted_action(twisted, inverse, np.eye(n)[k], 1e-10)) for k in range(n)])
    return float(np.max(np.abs(pin_to_orthogonal(phi) - M_neg), initial=0.0))


def double_cover_check(phi: PinElement, tol: float = 1e-10) -> bool:
    """φ and -φ give the same orthogonal matrix and that matrix preserves η."""
    M = pin_to_orthogonal(phi)
    return bool(sign_defect(phi) <= tol and orthogonality_residual(M, phi.signature) <= tol)


def random_unit_vector(sig: Signature, rng: np.random.Generator) -> np.ndarray:
    """Random v rescaled to |q(v)| = 1; near-null draws are rejected."""
    while True:
        v = rng.standard_normal(sig.n)
        qv = sig.q(v)
        if abs(qv) > 0.1:
            return v / np.sqrt(abs(qv))


def random_pin(sig: Signature, factors: int, rng: np.random.Generator) -> PinElement:
    return PinElement(sig, tuple(random_unit_vector(sig, rng) for _ in range(factors)))
