"""Electromagnetism as a U(1) gauge theory on Minkowski space.

Coordinates are (t, x, y, z), metric diag(1, -1, -1, -1), orientation
dt∧dx∧dy∧dz. The field strength is

    F = -E_x dt∧dx - E_y dt∧dy - E_z dt∧dz + B_x dy∧dz + B_y dz∧dx + B_z dx∧dy

and with δ = *d* the inhomogeneous equations read δF = j for the current
1-form j = ρ dt - J_x dx - J_y dy - J_z dz.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from gaugekit.errors import SignatureError, ValidationError
from gaugekit.modules.clifford.algebra import Signature
from gaugekit.modules.forms.charts import Chart, MetricField
from gaugekit.modules.forms.exterior import PForm, ext_d
from gaugekit.modules.forms.hodge import codifferential
from gaugekit.numerics import max_norm, partial, sweep_max

logger = logging.getLogger(__name__)

Vector3 = Callable[[np.ndarray], np.ndarray]
Scalar = Callable[[np.ndarray], float]

LORENTZ = Signature(1, 3)


def spacetime_chart(half_width: float = 1.0, name: str = "R31") -> Chart:
    return Chart.cube(4, -half_width, half_width, name=name)


@dataclass(frozen=True, eq=False)
class EMField:
    """Electric and magnetic fields on a (t, x, y, z) chart, optionally with potentials."""

    chart: Chart
    E: Vector3
    B: Vector3
    V: Scalar | None = None
    A: Vector3 | None = None
    name: str = "em"

    def __post_init__(self) -> None:
        if self.chart.dim != 4:
            raise ValidationError(f"EM fields live on a (t, x, y, z) chart, got dimension {self.chart.dim}")

    @classmethod
    def from_potentials(
        cls, chart: Chart, V: Scalar, A: Vector3, h: float | None = None, name: str = "em"
    ) -> EMField:
        """E = -∇V - ∂A/∂t and B = ∇×A by central differences."""
        step = chart.h if h is None else h

        def E(x: np.ndarray) -> np.ndarray:
            grad_V = np.array([partial(V, x, i, step) for i in (1, 2, 3)])
            return -grad_V - partial(A, x, 0, step)

        def B(x: np.ndarray) -> np.ndarray:
            d = [partial(A, x, i, step) for i in (1, 2, 3)]  # d[i][k] = ∂_i A_k
            return np.array([d[1][2] - d[2][1], d[2][0] - d[0][2], d[0][1] - d[1][0]])

        return cls(chart, E, B, V, A, name)

    def potential_form(self) -> PForm:
        """A = -V dt + A_x dx + A_y dy + A_z dz."""
        if self.V is None or self.A is None:
            raise ValidationError(f"{self.name} carries no potentials")
        V, A = self.V, self.A
        return PForm(self.chart, 1, lambda x: np.concatenate([[-V(x)], np.asarray(A(x), dtype=float)]))

    def potential_residual(self, points: np.ndarray | None = None, h: float | None = None) -> float:
        """max |(E, B) - fields derived from (V, A)|."""
        if self.V is None or self.A is None:
            raise ValidationError(f"{self.name} carries no potentials")
        derived = EMField.from_potentials(self.chart, self.V, self.A, h)
        pts = self.chart.grid() if points is None else points
        return sweep_max(
            lambda x: max(max_norm(self.E(x) - derived.E(x)), max_norm(self.B(x) - derived.B(x))), pts
        )


def assemble_F(em: EMField) -> PForm:
    """The field-strength 2-form, components in the order (01, 02, 03, 12, 13, 23)."""

    def field(x: np.ndarray) -> np.ndarray:
        Ex, Ey, Ez = np.asarray(em.E(x), dtype=float)
        Bx, By, Bz = np.asarray(em.B(x), dtype=float)
        return np.array([-Ex, -Ey, -Ez, Bz, -By, Bx])

    return PForm(em.chart, 2, field)


def current_form(chart: Chart, rho: Scalar, J: Vector3) -> PForm:
    """j = ρ dt - J·dx, so that δF = j reproduces ∇·E = ρ and ∇×B - ∂E/∂t = J."""
    return PForm(chart, 1, lambda x: np.concatenate([[rho(x)], -np.asarray(J(x), dtype=float)]))


def minkowski_metric(chart: Chart) -> MetricField:
    return MetricField.minkowski(chart)


@dataclass
class MaxwellResiduals:
    dF: float
    delta_F: float
    delta_j: float

    def as_tuple(self) -> tuple[float, float, float]:
        return self.dF, self.delta_F, self.delta_j


def maxwell_residuals(
    F: PForm,
    j: PForm | None = None,
    g: MetricField | None = None,
    points: np.ndarray | None = None,
    h: float | None = None,
) -> MaxwellResiduals:
    """(max |dF|, max |δF - j|, max |δj|) over sample points; j = None means vacuum."""
    g = g or MetricField.minkowski(F.chart)
    if g.signature != LORENTZ:
        raise SignatureError(f"Maxwell residuals need signature {LORENTZ}, got {g.signature}")
    if F.degree != 2 or F.n != 4:
        raise ValidationError(f"F must be a 2-form on a 4-dimensional chart, got degree {F.degree} in {F.n}")
    j = j or PForm.zero(F.chart, 1)
    pts = F.chart.grid() if points is None else points

    dF = ext_d(F, h)
    delta_F = codifferential(F, g, h=h) - j
    delta_j = codifferential(j, g, h=h)
    result = MaxwellResiduals(
        sweep_max(lambda x: max_norm(dF(x)), pts),
        sweep_max(lambda x: max_norm(delta_F(x)), pts),
        sweep_max(lambda x: max_norm(delta_j(x)), pts),
    )
    logger.debug("Maxwell residuals dF=%.3e δF-j=%.3e δj=%.3e", *result.as_tuple())
    return result


def plane_wave_field(chart: Chart | None = None) -> EMField:
    """Vacuum wave from V = 0, A = (cos(t - z), 0, 0): E = (sin(t - z), 0, 0), B = (0, sin(t - z), 0)."""
    chart = chart or spacetime_chart()
    return EMField(
        chart,
        E=lambda x: np.array([np.sin(x[0] - x[3]), 0.0, 0.0]),
        B=lambda x: np.array([0.0, np.sin(x[0] - x[3]), 0.0]),
        V=lambda x: 0.0,
        A=lambda x: np.array([np.cos(x[0] - x[3]), 0.0, 0.0]),
        name="plane-wave",
    )


def uniform_magnetic_field(B0: float, chart: Chart | None = None) -> EMField:
    """Static B = (0, 0, B₀), E = 0, from A = (-B₀y/2, B₀x/2, 0)."""
    chart = chart or spacetime_chart()
    return EMField(
        chart,
        E=lambda x: np.zeros(3),
        B=lambda x: np.array([0.0, 0.0, B0]),
        V=lambda x: 0.0,
        A=lambda x: np.array([-0.5 * B0 * x[2], 0.5 * B0 * x[1], 0.0]),
        name="uniform-B",
    )
