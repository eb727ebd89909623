"""Cocycles derived from a matrix cocycle, Jacobian cocycles and section transitions."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import comb
from typing import Any, Callable

import numpy as np

from gaugekit.errors import ValidationError
from gaugekit.modules.bundles.cocycle import Cocycle, GroupKind, Transition
from gaugekit.modules.bundles.cover import Cover
from gaugekit.modules.forms.exterior import compound_matrix
from gaugekit.numerics import default_step, gradient

logger = logging.getLogger(__name__)


def _require_matrix(c: Cocycle) -> int:
    if c.kind is not GroupKind.MATRIX or c.dim is None:
        raise ValidationError(f"{c.name}: derived cocycles need a matrix cocycle, got {c.kind.value}")
    return c.dim


def _mapped(c: Cocycle, fn: Callable[[np.ndarray], np.ndarray]) -> dict[tuple[str, str], Transition]:
    return {(a, b): (lambda x, a=a, b=b: fn(c.value(a, b, x))) for (a, b) in c.transitions}


def dual_cocycle(c: Cocycle) -> Cocycle:
    """h'_αβ = (h_αβ⁻¹)ᵀ, the transition of the dual bundle."""
    _require_matrix(c)
    return c.with_transitions(_mapped(c, lambda g: np.linalg.inv(g).T), name=f"{c.name}*")


def tensor_cocycle(c1: Cocycle, c2: Cocycle) -> Cocycle:
    """Kronecker product of two matrix cocycles on the same cover."""
    d1, d2 = _require_matrix(c1), _require_matrix(c2)
    if c1.cover is not c2.cover:
        raise ValidationError("tensor product needs cocycles on the same cover")
    transitions = {
        (a, b): (lambda x, a=a, b=b: np.kron(c1.value(a, b, x), c2.value(a, b, x))) for (a, b) in c1.transitions
    }
    return c1.with_transitions(transitions, name=f"{c1.name}⊗{c2.name}", dim=d1 * d2)


def exterior_power_cocycle(c: Cocycle, p: int) -> Cocycle:
    """p-th compound of each transition matrix."""
    n = _require_matrix(c)
    if not 0 <= p <= n:
        raise ValidationError(f"exterior power {p} out of range for rank {n}")
    return c.with_transitions(_mapped(c, lambda g: compound_matrix(g, p)), name=f"Λ^{p}{c.name}", dim=comb(n, p))


def density_cocycle(c: Cocycle, weight: float) -> Cocycle:
    """1×1 cocycle |det h_αβ|^(-weight) for absolute densities."""
    _require_matrix(c)
    return c.with_transitions(
        _mapped(c, lambda g: np.array([[abs(np.linalg.det(g)) ** (-weight)]])),
        name=f"|Λ|^{weight}{c.name}",
        dim=1,
    )


@dataclass(frozen=True, eq=False)
class ChartMap:
    """Coordinates of one chart: ``to_local`` from manifold points, ``from_local`` back."""

    to_local: Callable[[np.ndarray], np.ndarray]
    from_local: Callable[[np.ndarray], np.ndarray]
    h: float | None = None


def jacobian_cocycle(cover: Cover, chart_maps: dict[str, ChartMap], name: str = "J") -> Cocycle:
    """h_βα(p) = ∂y/∂x with x the α-coordinates and y the β-coordinates of p.

    Tangent-vector components then transform as v_β = h_βα v_α.
    """
    missing = set(cover.charts) - set(chart_maps)
    if missing:
        raise ValidationError(f"no chart map for {sorted(missing)}")

    def transition(b: str, a: str) -> Transition:
        src, dst = chart_maps[a], chart_maps[b]
        h = src.h or default_step()

        def jac(p: np.ndarray) -> np.ndarray:
            x = np.asarray(src.to_local(p), dtype=float)
            return gradient(lambda u: dst.to_local(src.from_local(u)), x, h).T

        return jac

    dims = {
        np.asarray(chart_maps[a].to_local(comp.samples[0])).shape[0]
        for (a, _), comps in cover.overlaps.items()
        for comp in comps
    }
    if len(dims) != 1:
        raise ValidationError(f"chart maps disagree on dimension: {sorted(dims)}")
    transitions = {pair: transition(*pair) for pair in cover.overlaps}
    return Cocycle(cover, GroupKind.MATRIX, transitions, dim=dims.pop(), name=name)


def section_transition(
    s_w: Callable[[np.ndarray], Any],
    c: Cocycle,
    w: str,
    v: str,
    action: Callable[[Any, Any], Any] | None = None,
) -> Callable[[np.ndarray], Any]:
    """s_V(x) = h_VW(x)·s_W(x).

    Matrix cocycles act by matrix-vector product and blade cocycles by
    Clifford product; finite groups need an explicit ``action``.
    """
    if action is None:
        if c.kind is GroupKind.MATRIX:
            action = lambda g, s: np.asarray(g) @ np.asarray(s)  # noqa: E731
        elif c.kind is GroupKind.BLADE:
            action = lambda g, s: g * s  # noqa: E731
        else:
            raise ValidationError(f"{c.name}: a finite cocycle needs the fiber action spelled out")
    return lambda x: action(c.value(v, w, x), s_w(x))
