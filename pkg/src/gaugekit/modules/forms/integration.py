"""Pullbacks and midpoint quadrature of top-degree forms."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from gaugekit.config import settings
from gaugekit.errors import DegreeError, ValidationError
from gaugekit.modules.forms.charts import Chart
from gaugekit.modules.forms.exterior import PForm, compound_matrix
from gaugekit.numerics import gradient

logger = logging.getLogger(__name__)

ParamMap = Callable[[np.ndarray], np.ndarray]


@dataclass
class Quadrature:
    value: complex
    cells: int
    error_estimate: float | None = None


def _default_cells() -> int:
    return int(settings.get("quadrature", {}).get("cells", 64))


def _midpoint_sum(a: PForm, cells: int) -> complex:
    chart = a.chart
    axes = [lo + (np.arange(cells) + 0.5) * (hi - lo) / cells for lo, hi in zip(chart.low, chart.high)]
    cell_volume = np.prod([(hi - lo) / cells for lo, hi in zip(chart.low, chart.high)])
    total = sum(a(np.array(pt))[0] for pt in itertools.product(*axes))
    return total * cell_volume


def integrate_nform(a: PForm, cells: int | None = None, estimate_error: bool = False) -> Quadrature:
    """Midpoint rule over the chart box with ``cells`` cells per axis.

    With ``estimate_error`` the result is compared against half the
    resolution; the midpoint rule is second order, so the difference over 3
    estimates the error.
    """
    if a.degree != a.n:
        raise DegreeError(f"only top-degree forms integrate over a chart, got degree {a.degree} of {a.n}")
    cells = _default_cells() if cells is None else int(cells)
    if cells < 1:
        raise ValidationError(f"quadrature needs at least one cell per axis, got {cells}")
    value = _midpoint_sum(a, cells)
    error = None
    if estimate_error and cells >= 2:
        coarse = _midpoint_sum(a, cells // 2)
        error = float(np.max(np.abs(value - coarse))) / 3.0
    logger.debug("Integrated %d-form on %s with %d cells/axis", a.degree, a.chart.name, cells)
    return Quadrature(value=value, cells=cells, error_estimate=error)


def pullback(
    a: PForm,
    param_map: ParamMap,
    chart: Chart,
    jacobian: Callable[[np.ndarray], np.ndarray] | None = None,
) -> PForm:
    """φ*a on ``chart`` for φ: chart → a.chart.

    (φ*a)_K(u) = Σ_I a_I(φ(u)) det(J[I, K]) with J = ∂x/∂u, an (n × k) matrix
    taken by central differences unless ``jacobian`` is supplied.
    """
    if a.degree > chart.dim:
        raise DegreeError(f"cannot pull a {a.degree}-form back to a {chart.dim}-dimensional chart")

    def jac(u: np.ndarray) -> np.ndarray:
        if jacobian is not None:
            return np.asarray(jacobian(u), dtype=float)
        return gradient(param_map, u, chart.h).T

    def field(u: np.ndarray) -> np.ndarray:
        J = jac(u)
        if J.shape != (a.n, chart.dim):
            raise ValidationError(f"Jacobian has shape {J.shape}, expected ({a.n}, {chart.dim})")
        return np.tensordot(compound_matrix(J, a.degree).T, a(param_map(u)), axes=(1, 0))

    return PForm(chart, a.degree, field, a.value_shape)


def sphere_chart() -> Chart:
    """(θ, φ) ∈ [0, π] × [0, 2π]."""
    return Chart((0.0, 0.0), (np.pi, 2.0 * np.pi), name="sphere")


def sphere_map(radius: float) -> tuple[ParamMap, Callable[[np.ndarray], np.ndarray]]:
    def embed(u: np.ndarray) -> np.ndarray:
        th, ph = u
        return radius * np.array([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)])

    def jac(u: np.ndarray) -> np.ndarray:
        th, ph = u
        return radius * np.array(
            [
                [np.cos(th) * np.cos(ph), -np.sin(th) * np.sin(ph)],
                [np.cos(th) * np.sin(ph), np.sin(th) * np.cos(ph)],
                [-np.sin(th), 0.0],
            ]
        )

    return embed, jac


def sphere_flux(F: PForm, radius: float = 1.0, cells: int | None = None) -> Quadrature:
    """∮ F over the centered sphere of ``radius``, oriented by the outward normal."""
    if F.n != 3 or F.degree != 2:
        raise DegreeError(f"sphere flux needs a 2-form in three dimensions, got degree {F.degree} in {F.n}")
    embed, jac = sphere_map(radius)
    return integrate_nform(pullback(F, embed, sphere_chart(), jacobian=jac), cells)
