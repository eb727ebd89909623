"""Metric operations on forms: index raising/lowering, Hodge star, codifferential."""

from __future__ import annotations

import logging
from math import comb
from typing import Sequence

import numpy as np

from gaugekit.errors import DegreeError, SignatureError, SingularError, ValidationError
from gaugekit.modules.forms.charts import MetricField, VectorField
from gaugekit.modules.forms.exterior import (
    PForm,
    basis,
    compound_matrix,
    ext_d,
    permutation_sign,
    positions,
)
from gaugekit.numerics import max_norm, sweep_max

logger = logging.getLogger(__name__)

NULL_NORM = 1e-10


def orthonormal_coframe(
    G_inv: np.ndarray,
    order: Sequence[int] | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Rows of ``E`` are covectors θ^a = E[a, i] dx^i with E G⁻¹ Eᵀ = diag(η).

    Modified Gram-Schmidt on the coordinate covectors, in ``order`` (index
    order by default) with positive-norm candidates first. Falls back to an
    eigen-decomposition if a candidate turns null. Positive η come first.
    """
    G_inv = np.asarray(G_inv, dtype=float)
    n = G_inv.shape[0]
    order = list(range(n)) if order is None else list(order)
    if sorted(order) != list(range(n)):
        raise ValidationError(f"order {order} is not a permutation of 0..{n - 1}")
    order.sort(key=lambda i: 0 if G_inv[i, i] > 0 else 1)

    frame: list[np.ndarray] = []
    norms: list[float] = []
    for i in order:
        v = np.eye(n)[i]
        for u, eta in zip(frame, norms):
            v = v - (v @ G_inv @ u) * eta * u
        norm = float(v @ G_inv @ v)
        if abs(norm) <= NULL_NORM:
            logger.debug("Gram-Schmidt hit a null covector, using eigh")
            return _eigen_coframe(G_inv)
        frame.append(v / np.sqrt(abs(norm)))
        norms.append(1.0 if norm > 0 else -1.0)

    rank = sorted(range(n), key=lambda k: 0 if norms[k] > 0 else 1)
    return np.array([frame[k] for k in rank]), np.array([norms[k] for k in rank])


def _eigen_coframe(G_inv: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    lam, V = np.linalg.eigh(G_inv)
    if np.min(np.abs(lam)) <= NULL_NORM:
        raise SingularError("inverse metric is degenerate")
    rank = sorted(range(len(lam)), key=lambda k: 0 if lam[k] > 0 else 1)
    E = np.array([V[:, k] / np.sqrt(abs(lam[k])) for k in rank])
    return E, np.sign(lam[rank])


def star_matrix(G: np.ndarray, p: int, orientation: int = 1, order: Sequence[int] | None = None) -> np.ndarray:
    """Matrix of * from p-form components to (n-p)-form components at one point."""
    G = np.asarray(G, dtype=float)
    n = G.shape[0]
    E, eta = orthonormal_coframe(np.linalg.inv(G), order)
    sigma = orientation * np.sign(np.linalg.det(E))
    out_pos = positions(n, n - p)
    D = np.zeros((comb(n, n - p), comb(n, p)))
    for a, A in enumerate(basis(n, p)):
        Ac = tuple(k for k in range(n) if k not in A)
        D[out_pos[Ac], a] = sigma * np.prod(eta[list(A)]) * permutation_sign(A + Ac)
    return compound_matrix(E, n - p).T @ D @ compound_matrix(np.linalg.inv(E), p).T


def _check_metric(a: PForm, g: MetricField) -> None:
    if g.chart.dim != a.n:
        raise ValidationError(f"metric on a {g.chart.dim}-dimensional chart vs {a.n}-dimensional form")


def hodge_star(
    a: PForm,
    g: MetricField,
    orientation: int = 1,
    order: Sequence[int] | None = None,
) -> PForm:
    """*a, characterised by φ ∧ *ψ = ⟨φ, ψ⟩ Ω with Ω = orientation·√|det g| dx¹∧…∧dxⁿ."""
    _check_metric(a, g)
    if orientation not in (1, -1):
        raise ValidationError(f"orientation must be ±1, got {orientation}")
    p, n = a.degree, a.n

    def field(x: np.ndarray) -> np.ndarray:
        S = star_matrix(g(x), p, orientation, order)
        return np.tensordot(S, a(x), axes=(1, 0))

    return PForm(a.chart, n - p, field, a.value_shape)


def inner_product(a: PForm, b: PForm, g: MetricField, x: np.ndarray) -> np.ndarray:
    """⟨a, b⟩ at x, using ⟨dx^I, dx^J⟩ = det(g⁻¹[I, J]). Bilinear, no conjugation."""
    if a.degree != b.degree:
        raise DegreeError(f"inner product of a {a.degree}-form with a {b.degree}-form")
    C = compound_matrix(g.inverse(x), a.degree)
    return np.einsum("i...,ij,j...->...", a(x), C, b(x))


def volume_form(g: MetricField, orientation: int = 1) -> PForm:
    """Ω = orientation·√|det g| dx¹∧…∧dxⁿ."""
    chart = g.chart
    return PForm(chart, chart.dim, lambda x: np.array([orientation * g.volume_density(x)]))


def raise_index(alpha: PForm, g: MetricField) -> VectorField:
    """v^i = g^{ij} α_j."""
    if alpha.degree != 1:
        raise DegreeError(f"only 1-forms can be raised, got degree {alpha.degree}")
    return lambda x: np.tensordot(g.inverse(x), alpha(x), axes=(1, 0))


def lower_index(v: VectorField, g: MetricField) -> PForm:
    """α_i = g_ij v^j."""
    chart = g.chart
    return PForm(chart, 1, lambda x: g(x) @ np.asarray(v(x)))


def codifferential(a: PForm, g: MetricField, orientation: int = 1, h: float | None = None) -> PForm:
    """δ = *d* (degree p-1). The orientation cancels between the two stars."""
    if a.degree == 0:
        raise DegreeError("the codifferential of a 0-form vanishes identically; degree must be >= 1")
    inner = hodge_star(a, g, orientation)
    return hodge_star(ext_d(inner, h), g, orientation)


def hodge_laplacian(a: PForm, g: MetricField, h: float | None = None) -> PForm:
    """dδ + δd; terms that leave the degree range are dropped."""
    terms = []
    if a.degree > 0:
        terms.append(ext_d(codifferential(a, g, h=h), h))
    if a.degree < a.n:
        terms.append(codifferential(ext_d(a, h), g, h=h))
    total = terms[0]
    for term in terms[1:]:
        total = total + term
    return total


def self_dual_split(a: PForm, g: MetricField, orientation: int = 1) -> tuple[PForm, PForm]:
    """(a⁺, a⁻) = ((a + *a)/2, (a - *a)/2) on middle-degree forms."""
    n = a.n
    if n % 2 or a.degree != n // 2:
        raise DegreeError(f"self-dual split needs a middle-degree form, got degree {a.degree} in dimension {n}")
    m = n // 2
    if (-1) ** (g.signature.s + m) != 1:
        raise SignatureError(
            f"** = -1 on {m}-forms in signature {g.signature}; eigenvalues of * are ±i, not ±1"
        )
    star = hodge_star(a, g, orientation)
    return 0.5 * (a + star), 0.5 * (a - star)


def delta_squared_residual(
    a: PForm, g: MetricField, h: float, points: np.ndarray | None = None, ratio: float = 2.0
) -> float:
    """max |δ(δ a)| with the outer codifferential at ``ratio · h``."""
    if a.degree < 2:
        raise DegreeError(f"δ² needs degree >= 2, got {a.degree}")
    dda = codifferential(codifferential(a, g, h=h), g, h=ratio * h)
    pts = a.chart.grid() if points is None else points
    return sweep_max(lambda x: max_norm(dda(x)), pts)
