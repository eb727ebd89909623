"""Coordinate charts and (pseudo-)metric fields on them."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from gaugekit.errors import ChartError, SignatureError, SingularError, ValidationError
from gaugekit.modules.clifford.algebra import Signature
from gaugekit.numerics import default_step, interior_grid

logger = logging.getLogger(__name__)

VectorField = Callable[[np.ndarray], np.ndarray]

# Stencils may poke this fraction of an edge past the box.
FACE_SLACK = 0.01


@dataclass(frozen=True)
class Chart:
    """Axis-aligned coordinate box with a finite-difference step.

    ``h`` defaults to the configured step times the box diameter.
    """

    low: tuple[float, ...]
    high: tuple[float, ...]
    h: float = field(default=0.0)
    name: str = "U"

    def __post_init__(self) -> None:
        low = tuple(float(v) for v in self.low)
        high = tuple(float(v) for v in self.high)
        if len(low) != len(high) or not low:
            raise ValidationError(f"chart {self.name}: low/high must be non-empty and equal length")
        if any(lo >= hi for lo, hi in zip(low, high)):
            raise ValidationError(f"chart {self.name}: empty box {low} .. {high}")
        object.__setattr__(self, "low", low)
        object.__setattr__(self, "high", high)
        h = self.h or default_step() * self.diameter
        if h <= 0 or h >= 0.01 * min(hi - lo for lo, hi in zip(low, high)):
            raise ValidationError(f"chart {self.name}: step {h!r} must be positive and small against the box")
        object.__setattr__(self, "h", float(h))

    @classmethod
    def cube(cls, dim: int, low: float = -1.0, high: float = 1.0, h: float = 0.0, name: str = "U") -> Chart:
        return cls((low,) * dim, (high,) * dim, h=h, name=name)

    @property
    def dim(self) -> int:
        return len(self.low)

    @property
    def diameter(self) -> float:
        return float(np.linalg.norm(np.subtract(self.high, self.low)))

    def contains(self, x: np.ndarray) -> bool:
        x = np.asarray(x, dtype=float)
        pad = FACE_SLACK * (np.asarray(self.high) - np.asarray(self.low))
        return bool(np.all(x >= np.asarray(self.low) - pad) and np.all(x <= np.asarray(self.high) + pad))

    def require(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValidationError(f"chart {self.name}: point {x} has wrong dimension, expected {self.dim}")
        if not self.contains(x):
            raise ChartError(f"point {x} lies outside chart {self.name} {self.low}..{self.high}")
        return x

    def grid(self, points: int | None = None, margin: float | None = None) -> np.ndarray:
        return interior_grid(self.low, self.high, points, margin)

    def with_step(self, h: float) -> Chart:
        return Chart(self.low, self.high, h=h, name=self.name)


@dataclass(frozen=True, eq=False)
class MetricField:
    """Symmetric non-degenerate g_ij(x) with a fixed signature (r positive, s negative)."""

    chart: Chart
    g: Callable[[np.ndarray], np.ndarray]
    signature: Signature

    def __post_init__(self) -> None:
        if self.signature.n != self.chart.dim:
            raise SignatureError(f"signature {self.signature} does not fit a {self.chart.dim}-dimensional chart")

    def __call__(self, x: np.ndarray) -> np.ndarray:
        G = np.asarray(self.g(np.asarray(x, dtype=float)), dtype=float)
        n = self.chart.dim
        if G.shape != (n, n):
            raise ValidationError(f"metric returned shape {G.shape}, expected ({n}, {n})")
        scale = max(1.0, float(np.max(np.abs(G))))
        if np.max(np.abs(G - G.T)) > 1e-12 * scale:
            raise ValidationError(f"metric is not symmetric at {x}")
        if abs(np.linalg.det(G)) < 1e-14 * scale**n:
            raise SingularError(f"metric is degenerate at {x}")
        return G

    def inverse(self, x: np.ndarray) -> np.ndarray:
        return np.linalg.inv(self(x))

    def volume_density(self, x: np.ndarray) -> float:
        """√|det g|, an absolute density of weight 1."""
        return float(np.sqrt(abs(np.linalg.det(self(x)))))

    def signature_at(self, x: np.ndarray) -> Signature:
        eig = np.linalg.eigvalsh(self(x))
        return Signature(int(np.sum(eig > 0)), int(np.sum(eig < 0)))

    def check_samples(self, points: np.ndarray) -> None:
        """Raise if the signature differs from the declared one at any sample."""
        for x in points:
            found = self.signature_at(x)
            if found != self.signature:
                raise SignatureError(f"metric has signature {found} at {x}, declared {self.signature}")

    @classmethod
    def constant(cls, chart: Chart, matrix: np.ndarray, signature: Signature | None = None) -> MetricField:
        matrix = np.array(matrix, dtype=float)
        if signature is None:
            eig = np.linalg.eigvalsh(matrix)
            signature = Signature(int(np.sum(eig > 0)), int(np.sum(eig < 0)))
        return cls(chart, lambda x: matrix, signature)

    @classmethod
    def euclidean(cls, chart: Chart) -> MetricField:
        return cls.constant(chart, np.eye(chart.dim), Signature(chart.dim, 0))

    @classmethod
    def minkowski(cls, chart: Chart) -> MetricField:
        """diag(1, -1, -1, -1) on (t, x, y, z)."""
        if chart.dim != 4:
            raise SignatureError(f"Minkowski metric needs a 4-dimensional chart, got {chart.dim}")
        return cls.constant(chart, np.diag([1.0, -1.0, -1.0, -1.0]), Signature(1, 3))

    @classmethod
    def round_sphere(cls, chart: Chart, radius: float = 1.0) -> MetricField:
        """r²(dθ² + sin²θ dφ²) on a (θ, φ) chart."""
        if chart.dim != 2:
            raise SignatureError("the sphere metric lives on a 2-dimensional chart")
        return cls(chart, lambda x: radius**2 * np.diag([1.0, np.sin(x[0]) ** 2]), Signature(2, 0))
