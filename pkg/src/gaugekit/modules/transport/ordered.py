"""Time-ordered exponentials: Riemann products, RK4 fundamental solutions and Picard iterates.

All three solve dW/dt = A(t) W with W(a) = I; the product puts later times
on the left.
"""

from __future__ import annotations

import logging
from math import factorial
from typing import Callable

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.linalg import expm

from gaugekit.config import settings
from gaugekit.errors import ValidationError
from gaugekit.numerics import max_norm

logger = logging.getLogger(__name__)

TimeMatrix = Callable[[float], np.ndarray]

SAMPLING = {"midpoint": 0.5, "left": 0.0, "right": 1.0}
FACTORS = ("exp", "linear")
MAX_PICARD_ORDER = 8


def _transport_cfg() -> dict:
    return settings.get("transport", {})


def _identity_like(A: TimeMatrix, t: float) -> np.ndarray:
    first = np.asarray(A(t))
    if first.ndim != 2 or first.shape[0] != first.shape[1]:
        raise ValidationError(f"generator must be square, got shape {first.shape}")
    return np.eye(first.shape[0], dtype=np.result_type(first, float))


def time_ordered_exp(
    A: TimeMatrix,
    a: float,
    b: float,
    steps: int | None = None,
    sampling: str | None = None,
    factor: str | None = None,
) -> np.ndarray:
    """T exp ∫_a^b A(t) dt as the ordered product F_N ⋯ F_1.

    Each factor is exp(A(t_i') Δt), or I + A(t_i') Δt with ``factor="linear"``.
    Midpoint sampling converges at second order in 1/N, left or right at first.
    """
    cfg = _transport_cfg()
    steps = int(cfg.get("steps", 256) if steps is None else steps)
    sampling = sampling or cfg.get("sampling", "midpoint")
    factor = factor or cfg.get("factor", "exp")
    if steps < 1:
        raise ValidationError(f"time-ordered product needs N >= 1, got {steps}")
    if sampling not in SAMPLING:
        raise ValidationError(f"unknown sampling {sampling!r}; expected one of {sorted(SAMPLING)}")
    if factor not in FACTORS:
        raise ValidationError(f"unknown factor {factor!r}; expected one of {FACTORS}")

    dt = (b - a) / steps
    offset = SAMPLING[sampling]
    W = _identity_like(A, a)
    I = np.eye(W.shape[0])
    for i in range(steps):
        step = np.asarray(A(a + (i + offset) * dt)) * dt
        F = expm(step) if factor == "exp" else I + step
        W = F @ W
    return W


def rk4_fundamental(A: TimeMatrix, a: float, b: float, steps: int | None = None) -> np.ndarray:
    """Classical RK4 for dW/dt = A(t) W, W(a) = I.

    Defaults to the configured oracle resolution (steps × oracle_factor).
    """
    if steps is None:
        cfg = _transport_cfg()
        steps = int(cfg.get("steps", 256)) * int(cfg.get("oracle_factor", 8))
    if steps < 1:
        raise ValidationError(f"RK4 needs at least one step, got {steps}")
    dt = (b - a) / steps
    W = _identity_like(A, a)
    for i in range(steps):
        t = a + i * dt
        k1 = np.asarray(A(t)) @ W
        k2 = np.asarray(A(t + 0.5 * dt)) @ (W + 0.5 * dt * k1)
        k3 = np.asarray(A(t + 0.5 * dt)) @ (W + 0.5 * dt * k2)
        k4 = np.asarray(A(t + dt)) @ (W + dt * k3)
        W = W + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return W


def picard_series(A: TimeMatrix, a: float, b: float, order: int, nodes: int | None = None) -> np.ndarray:
    """Dyson partial sum through ``order`` iterated integrals.

    Runs ``order`` Picard iterations W_{j+1}(t) = I + ∫_a^t A(s) W_j(s) ds on a
    shared trapezoid grid; the j-th iterate agrees with the Dyson series through
    the j-th term.
    """
    if order < 0:
        raise ValidationError(f"Picard order must be non-negative, got {order}")
    if order > MAX_PICARD_ORDER:
        raise ValidationError(f"Picard order {order} exceeds the supported maximum {MAX_PICARD_ORDER}")
    nodes = int(_transport_cfg().get("picard_nodes", 4097) if nodes is None else nodes)
    if nodes < 2:
        raise ValidationError(f"Picard quadrature needs at least two nodes, got {nodes}")

    I = _identity_like(A, a)
    if order == 0:
        return I
    ts = np.linspace(a, b, nodes)
    As = np.array([np.asarray(A(t)) for t in ts])
    W = np.broadcast_to(I, As.shape).astype(np.result_type(As, I))
    for _ in range(order):
        integrand = np.einsum("tij,tjk->tik", As, W)
        W = I + cumulative_trapezoid(integrand, ts, axis=0, initial=0.0)
    return W[-1]


def picard_bound(norm: float, length: float, order: int) -> float:
    """Tail estimate (‖A‖ L)^{k+1} / (k+1)! for the truncated Dyson series."""
    return (norm * length) ** (order + 1) / factorial(order + 1)


def composition_check(A: TimeMatrix, a: float, b: float, c: float, steps: int | None = None) -> float:
    """‖W(c, a) - W(c, b) W(b, a)‖ with the steps split in proportion to the intervals."""
    if not a < b < c:
        raise ValidationError(f"composition needs a < b < c, got {a}, {b}, {c}")
    steps = int(_transport_cfg().get("steps", 256) if steps is None else steps)
    first = max(1, round(steps * (b - a) / (c - a)))
    second = max(1, steps - first)
    whole = time_ordered_exp(A, a, c, first + second)
    split = time_ordered_exp(A, b, c, second) @ time_ordered_exp(A, a, b, first)
    residual = max_norm(whole - split)
    logger.debug("Composition residual %.3e over [%g, %g, %g]", residual, a, b, c)
    return residual


def oracle_defect(A: TimeMatrix, a: float, b: float, steps: int | None = None) -> float:
    """‖product - RK4 oracle‖ at the configured oracle factor."""
    cfg = _transport_cfg()
    steps = int(cfg.get("steps", 256) if steps is None else steps)
    oracle = rk4_fundamental(A, a, b, steps * int(cfg.get("oracle_factor", 8)))
    return max_norm(time_ordered_exp(A, a, b, steps) - oracle)
