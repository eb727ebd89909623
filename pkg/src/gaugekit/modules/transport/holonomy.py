"""Holonomy around small rectangles and its second-order agreement with curvature.

Transporting around base → +sξ → +sη → -sξ → -sη gives exp(s² F(η, ξ) + O(s³)).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import logm

from gaugekit.modules.connections.curvature import curvature_linear
from gaugekit.modules.connections.types import LinearConnection
from gaugekit.modules.transport.parallel import TransportOperator, parallel_transport_linear
from gaugekit.modules.transport.paths import rectangle_loop
from gaugekit.numerics import max_norm, observed_order

logger = logging.getLogger(__name__)

MIN_HOLONOMY_ORDER = 3.0


@dataclass
class HolonomyFit:
    scales: list[float]
    defects: list[float]
    order: float

    @property
    def passed(self) -> bool:
        # defects already at round-off mean the loop saw no O(s³) term at all
        if max(self.defects) < 1e-12:
            return True
        return self.order >= MIN_HOLONOMY_ORDER - 0.1


def holonomy_rectangle(
    conn: LinearConnection,
    base: Sequence[float],
    xi: Sequence[float],
    eta: Sequence[float],
    scale: float,
    steps: int | None = None,
) -> TransportOperator:
    path = rectangle_loop(conn.chart, base, xi, eta, scale, steps or 0)
    return parallel_transport_linear(conn, path)


def holonomy_log_defect(
    conn: LinearConnection,
    base: Sequence[float],
    xi: Sequence[float],
    eta: Sequence[float],
    scale: float,
    steps: int | None = None,
) -> float:
    """‖log(hol) - s² F(η, ξ)(base)‖."""
    T = holonomy_rectangle(conn, base, xi, eta, scale, steps)
    F = curvature_linear(conn).on_vectors(np.asarray(base, dtype=float), np.asarray(eta), np.asarray(xi))
    return max_norm(logm(T.matrix) - scale**2 * F)


def holonomy_curvature_fit(
    conn: LinearConnection,
    base: Sequence[float],
    xi: Sequence[float],
    eta: Sequence[float],
    scale: float = 0.2,
    levels: int = 3,
    steps: int | None = None,
) -> HolonomyFit:
    """Observed order of the log-defect over s, s/2, s/4, ..."""
    scales = [scale / 2**k for k in range(levels)]
    defects = [holonomy_log_defect(conn, base, xi, eta, s, steps) for s in scales]
    fit = HolonomyFit(scales, defects, observed_order(scales, defects))
    logger.info("Holonomy fit for %s: order %.2f over scales %s", conn.name, fit.order, scales)
    return fit
