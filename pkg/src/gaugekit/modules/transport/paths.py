"""Parameterized paths x(t), t ∈ [0, 1], inside a chart."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from gaugekit.config import settings
from gaugekit.errors import ValidationError
from gaugekit.modules.forms.charts import Chart

logger = logging.getLogger(__name__)

PathMap = Callable[[float], np.ndarray]

VELOCITY_STEP = 1e-6


def default_steps() -> int:
    return int(settings.get("transport", {}).get("steps", 256))


@dataclass(frozen=True, eq=False)
class Path:
    """A path with ``steps`` product intervals; velocity is analytic if ``dx`` is given."""

    chart: Chart
    x: PathMap
    dx: PathMap | None = None
    steps: int = 0
    pieces: int = 1
    name: str = "C"

    def __post_init__(self) -> None:
        steps = self.steps or default_steps()
        if steps < 1:
            raise ValidationError(f"path {self.name}: need at least one step, got {steps}")
        if steps % self.pieces:
            steps += self.pieces - steps % self.pieces
        object.__setattr__(self, "steps", steps)

    def point(self, t: float) -> np.ndarray:
        return np.asarray(self.x(t), dtype=float)

    def velocity(self, t: float) -> np.ndarray:
        if self.dx is not None:
            return np.asarray(self.dx(t), dtype=float)
        return (self.point(t + VELOCITY_STEP) - self.point(t - VELOCITY_STEP)) / (2.0 * VELOCITY_STEP)

    @property
    def start(self) -> np.ndarray:
        return self.point(0.0)

    @property
    def end(self) -> np.ndarray:
        return self.point(1.0)

    def check_inside(self) -> None:
        """Raise ChartError if any sample (grid and midpoints) leaves the chart."""
        for t in np.linspace(0.0, 1.0, 2 * self.steps + 1):
            self.chart.require(self.point(float(t)))

    # -- constructors -------------------------------------------------------

    @classmethod
    def segment(cls, chart: Chart, p0: Sequence[float], p1: Sequence[float], steps: int = 0) -> Path:
        p0, p1 = np.asarray(p0, dtype=float), np.asarray(p1, dtype=float)
        delta = p1 - p0
        return cls(chart, lambda t: p0 + t * delta, lambda t: delta, steps, name="segment")

    @classmethod
    def polyline(cls, chart: Chart, points: Sequence[Sequence[float]], steps: int = 0, name: str = "polyline") -> Path:
        """Piecewise-linear path with each leg taking an equal share of [0, 1]."""
        pts = np.asarray(points, dtype=float)
        legs = len(pts) - 1
        if legs < 1:
            raise ValidationError("a polyline needs at least two points")

        def leg(t: float) -> tuple[int, float]:
            u = min(max(t, 0.0), 1.0) * legs
            k = min(int(u), legs - 1)
            return k, u - k

        def x(t: float) -> np.ndarray:
            k, u = leg(t)
            return pts[k] + u * (pts[k + 1] - pts[k])

        def dx(t: float) -> np.ndarray:
            k, _ = leg(t)
            return legs * (pts[k + 1] - pts[k])

        return cls(chart, x, dx, steps, pieces=legs, name=name)

    def concatenate(self, other: Path) -> Path:
        """This path on [0, ½], then ``other`` on [½, 1]."""
        if other.chart != self.chart:
            raise ValidationError("concatenated paths must share a chart")

        def x(t: float) -> np.ndarray:
            return self.point(2.0 * t) if t <= 0.5 else other.point(2.0 * t - 1.0)

        def dx(t: float) -> np.ndarray:
            return 2.0 * (self.velocity(2.0 * t) if t < 0.5 else other.velocity(2.0 * t - 1.0))

        steps = self.steps + other.steps
        return Path(self.chart, x, dx, steps, pieces=2, name=f"{self.name}+{other.name}")

    def reversed(self) -> Path:
        return Path(
            self.chart, lambda t: self.point(1.0 - t), lambda t: -self.velocity(1.0 - t), self.steps, self.pieces, f"-{self.name}"
        )

    def reparameterized(self, phi: Callable[[float], float], dphi: Callable[[float], float] | None = None) -> Path:
        """t ↦ x(φ(t)) for an increasing φ with φ(0) = 0 and φ(1) = 1."""
        if abs(phi(0.0)) > 1e-12 or abs(phi(1.0) - 1.0) > 1e-12:
            raise ValidationError("reparameterization must fix both endpoints")

        def rate(t: float) -> float:
            if dphi is not None:
                return dphi(t)
            return (phi(t + VELOCITY_STEP) - phi(t - VELOCITY_STEP)) / (2.0 * VELOCITY_STEP)

        return Path(
            self.chart,
            lambda t: self.point(phi(t)),
            lambda t: rate(t) * self.velocity(phi(t)),
            self.steps,
            1,
            f"{self.name}∘φ",
        )


def rectangle_loop(
    chart: Chart,
    base: Sequence[float],
    xi: Sequence[float],
    eta: Sequence[float],
    scale: float,
    steps: int = 0,
) -> Path:
    """base → +sξ → +sη → -sξ → -sη, back at base."""
    b = np.asarray(base, dtype=float)
    a = scale * np.asarray(xi, dtype=float)
    c = scale * np.asarray(eta, dtype=float)
    return Path.polyline(chart, [b, b + a, b + a + c, b + c, b], steps, name="rectangle")
