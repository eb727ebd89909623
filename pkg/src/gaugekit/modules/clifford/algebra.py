"""Clifford algebra arithmetic on bitmask-indexed blades.

Conventions: a signature (r, s) has r directions with q(e) = +1 followed by s
directions with q(e) = -1. The defining relation is v² + q(v) = 0, so a
generator squares to -q(e_k): e² = -1 in the first r slots and +1 in the last s.

Blade ``mask`` bit k set means e_{k+1} is a factor; factors are kept in
ascending order. Coefficients are complex throughout.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from gaugekit.errors import SignatureError, SingularError, ValidationError

logger = logging.getLogger(__name__)

MAX_GENERATORS = 12


@dataclass(frozen=True)
class Signature:
    r: int
    s: int = 0

    def __post_init__(self) -> None:
        if self.r < 0 or self.s < 0:
            raise SignatureError(f"signature counts must be non-negative, got ({self.r}, {self.s})")
        if self.n > MAX_GENERATORS:
            raise SignatureError(f"at most {MAX_GENERATORS} generators supported, got {self.n}")

    @property
    def n(self) -> int:
        return self.r + self.s

    @property
    def dim(self) -> int:
        return 1 << self.n

    @property
    def eta(self) -> np.ndarray:
        """Diagonal of q in the orthonormal basis."""
        return np.array([1.0] * self.r + [-1.0] * self.s)

    @property
    def eta_matrix(self) -> np.ndarray:
        return np.diag(self.eta)

    def q(self, v: np.ndarray) -> float:
        v = np.asarray(v)
        return float(np.real(np.sum(self.eta * v * v)))

    def beta(self, v: np.ndarray, w: np.ndarray) -> float:
        return float(np.real(np.sum(self.eta * np.asarray(v) * np.asarray(w))))

    def __str__(self) -> str:
        return f"({self.r},{self.s})"


def grade(mask: int) -> int:
    return bin(mask).count("1")


def blade_product(a: int, b: int, sig: Signature) -> tuple[int, int]:
    """(sign, mask) with e_A e_B = sign · e_{A xor B}."""
    swaps = 0
    for i in range(sig.n):
        if a >> i & 1:
            swaps += grade(b & ((1 << i) - 1))
    sign = -1 if swaps % 2 else 1
    for k in range(sig.n):
        if a >> k & b >> k & 1:
            sign *= int(-sig.eta[k])
    return sign, a ^ b


@lru_cache(maxsize=32)
def product_table(sig: Signature) -> tuple[np.ndarray, np.ndarray]:
    """Sign and result-mask tables indexed [a, b] over all blade pairs."""
    size = sig.dim
    signs = np.empty((size, size), dtype=float)
    masks = np.empty((size, size), dtype=np.intp)
    for a in range(size):
        for b in range(size):
            signs[a, b], masks[a, b] = blade_product(a, b, sig)
    logger.debug("Built %dx%d blade table for signature %s", size, size, sig)
    return signs, masks


@lru_cache(maxsize=32)
def _grades(n: int) -> np.ndarray:
    return np.array([grade(m) for m in range(1 << n)])


@dataclass(frozen=True, eq=False)
class CliffordElement:
    signature: Signature
    coeffs: np.ndarray

    # numpy scalars on the left defer to __rmul__ instead of broadcasting
    __array_ufunc__ = None

    def __post_init__(self) -> None:
        coeffs = np.asarray(self.coeffs, dtype=complex)
        if coeffs.shape != (self.signature.dim,):
            raise ValidationError(
                f"expected {self.signature.dim} coefficients for signature {self.signature}, got {coeffs.shape}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    # -- constructors -------------------------------------------------------

    @classmethod
    def scalar(cls, sig: Signature, value: complex = 1.0) -> CliffordElement:
        c = np.zeros(sig.dim, dtype=complex)
        c[0] = value
        return cls(sig, c)

    @classmethod
    def blade(cls, sig: Signature, indices: tuple[int, ...] | list[int], value: complex = 1.0) -> CliffordElement:
        """Product e_{i1} e_{i2} ... of 0-based generators, in the given order."""
        result = cls.scalar(sig, value)
        for i in indices:
            result = result * cls.generator(sig, i)
        return result

    @classmethod
    def generator(cls, sig: Signature, k: int) -> CliffordElement:
        if not 0 <= k < sig.n:
            raise ValidationError(f"generator index {k} out of range for signature {sig}")
        c = np.zeros(sig.dim, dtype=complex)
        c[1 << k] = 1.0
        return cls(sig, c)

    @classmethod
    def vector(cls, sig: Signature, v: np.ndarray) -> CliffordElement:
        v = np.asarray(v)
        if v.shape != (sig.n,):
            raise ValidationError(f"vector needs {sig.n} components, got {v.shape}")
        c = np.zeros(sig.dim, dtype=complex)
        for k in range(sig.n):
            c[1 << k] = v[k]
        return cls(sig, c)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: CliffordElement) -> None:
        if other.signature != self.signature:
            raise SignatureError(f"signature mismatch: {self.signature} vs {other.signature}")

    def __add__(self, other: CliffordElement | complex) -> CliffordElement:
        if isinstance(other, CliffordElement):
            self._check(other)
            return CliffordElement(self.signature, self.coeffs + other.coeffs)
        return self + CliffordElement.scalar(self.signature, other)

    __radd__ = __add__

    def __sub__(self, other: CliffordElement | complex) -> CliffordElement:
        return self + (-1.0) * other

    def __rsub__(self, other: complex) -> CliffordElement:
        return (-1.0) * self + other

    def __neg__(self) -> CliffordElement:
        return CliffordElement(self.signature, -self.coeffs)

    def __mul__(self, other: CliffordElement | complex) -> CliffordElement:
        if isinstance(other, CliffordElement):
            return clifford_product(self, other)
        return CliffordElement(self.signature, self.coeffs * other)

    def __rmul__(self, other: complex) -> CliffordElement:
        return CliffordElement(self.signature, other * self.coeffs)

    def __truediv__(self, value: complex) -> CliffordElement:
        return CliffordElement(self.signature, self.coeffs / value)

    # -- inspection ---------------------------------------------------------

    @property
    def is_real(self) -> bool:
        return bool(np.max(np.abs(self.coeffs.imag), initial=0.0) <= 1e-12)

    def grade_projection(self, p: int) -> CliffordElement:
        keep = _grades(self.signature.n) == p
        return CliffordElement(self.signature, np.where(keep, self.coeffs, 0.0))

    def vector_part(self) -> np.ndarray:
        return np.array([self.coeffs[1 << k] for k in range(self.signature.n)])

    def distance(self, other: CliffordElement) -> float:
        self._check(other)
        return float(np.max(np.abs(self.coeffs - other.coeffs), initial=0.0))

    def is_close(self, other: CliffordElement, tol: float = 1e-12) -> bool:
        return self.distance(other) <= tol

    def __repr__(self) -> str:
        terms = []
        for mask, c in enumerate(self.coeffs):
            if abs(c) > 1e-14:
                name = "".join(f"e{k + 1}" for k in range(self.signature.n) if mask >> k & 1) or "1"
                terms.append(f"({c:.4g}){name}")
        return f"CliffordElement{self.signature}[{' + '.join(terms) or '0'}]"


def clifford_product(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    a._check(b)
    sig = a.signature
    signs, masks = product_table(sig)
    out = np.zeros(sig.dim, dtype=complex)
    np.add.at(out, masks.ravel(), (signs * np.outer(a.coeffs, b.coeffs)).ravel())
    return CliffordElement(sig, out)


def grade_parts(a: CliffordElement) -> tuple[CliffordElement, CliffordElement]:
    """(even part, odd part)."""
    odd = _grades(a.signature.n) % 2 == 1
    return (
        CliffordElement(a.signature, np.where(odd, 0.0, a.coeffs)),
        CliffordElement(a.signature, np.where(odd, a.coeffs, 0.0)),
    )


def alpha(a: CliffordElement) -> CliffordElement:
    """Grade involution induced by v ↦ -v."""
    return CliffordElement(a.signature, a.coeffs * (-1.0) ** _grades(a.signature.n))


def reverse(a: CliffordElement) -> CliffordElement:
    """Reverses factor order: a grade-p blade picks up (-1)^(p(p-1)/2)."""
    g = _grades(a.signature.n)
    return CliffordElement(a.signature, a.coeffs * (-1.0) ** (g * (g - 1) // 2))


def eta_square_sign(sig: Signature) -> int:
    """Sign of (e_1 ... e_n)², which is (-1)^(r + n(n-1)/2)."""
    return -1 if (sig.r + sig.n * (sig.n - 1) // 2) % 2 else 1


def volume_element(sig: Signature, orientation: int = 1) -> CliffordElement:
    """ω = i^m e_1 ... e_n with ω² = 1; ``orientation`` = -1 negates it."""
    if orientation not in (1, -1):
        raise ValidationError(f"orientation must be +1 or -1, got {orientation}")
    factor = 1.0 if eta_square_sign(sig) == 1 else 1j
    c = np.zeros(sig.dim, dtype=complex)
    c[sig.dim - 1] = orientation * factor
    return CliffordElement(sig, c)


def idempotents(sig: Signature, orientation: int = 1) -> tuple[CliffordElement, CliffordElement]:
    """p± = (1 ± ω)/2."""
    omega = volume_element(sig, orientation)
    one = CliffordElement.scalar(sig)
    return (one + omega) / 2.0, (one - omega) / 2.0


def _vector_products(x: CliffordElement) -> list[tuple[CliffordElement, CliffordElement]]:
    sig = x.signature
    return [(CliffordElement.generator(sig, k) * x, x * CliffordElement.generator(sig, k)) for k in range(sig.n)]


def commutes_with_vectors(x: CliffordElement, tol: float = 1e-12) -> bool:
    return all(left.is_close(right, tol) for left, right in _vector_products(x))


def anticommutes_with_vectors(x: CliffordElement, tol: float = 1e-12) -> bool:
    return all(left.is_close(-right, tol) for left, right in _vector_products(x))


def left_multiplication_matrix(a: CliffordElement) -> np.ndarray:
    """Matrix of b ↦ a·b on the blade basis."""
    sig = a.signature
    signs, masks = product_table(sig)
    M = np.zeros((sig.dim, sig.dim), dtype=complex)
    for j in range(sig.dim):
        np.add.at(M[:, j], masks[:, j], signs[:, j] * a.coeffs)
    return M


def clifford_inverse(a: CliffordElement) -> CliffordElement:
    """Two-sided inverse via the left-regular matrix."""
    M = left_multiplication_matrix(a)
    if np.linalg.matrix_rank(M) < a.signature.dim:
        raise SingularError(f"{a!r} is not invertible")
    unit = np.zeros(a.signature.dim, dtype=complex)
    unit[0] = 1.0
    return CliffordElement(a.signature, np.linalg.solve(M, unit))


def basis_rank(sig: Signature) -> int:
    """Dimension of the span of all products of distinct generators.

    Products are formed with the Clifford product itself, not read off the
    blade encoding, so the count tests the multiplication rule.
    """
    vectors = []
    for p in range(sig.n + 1):
        for subset in itertools.combinations(range(sig.n), p):
            vectors.append(CliffordElement.blade(sig, subset).coeffs)
    return int(np.linalg.matrix_rank(np.array(vectors)))
