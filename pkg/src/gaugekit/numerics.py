"""Finite differences, sample grids and residual sweeps shared by all modules."""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence

import numpy as np

from gaugekit.config import settings

logger = logging.getLogger(__name__)

Field = Callable[[np.ndarray], np.ndarray]


def default_step() -> float:
    return float(settings.get("numerics", {}).get("step", 1e-5))


def nested_step() -> float:
    return float(settings.get("numerics", {}).get("nested_step", 1e-4))


def seeded_rng(seed: int | None = None) -> np.random.Generator:
    """Generator seeded from ``seed`` or the configured report seed."""
    if seed is None:
        seed = int(settings.get("reports", {}).get("seed", 42))
    return np.random.default_rng(seed)


def partial(f: Field, x: np.ndarray, i: int, h: float) -> np.ndarray:
    """Central difference of ``f`` along coordinate ``i``."""
    x = np.asarray(x, dtype=float)
    step = np.zeros_like(x)
    step[i] = h
    return (np.asarray(f(x + step)) - np.asarray(f(x - step))) / (2.0 * h)


def gradient(f: Field, x: np.ndarray, h: float) -> np.ndarray:
    """All coordinate partials stacked on a new leading axis."""
    x = np.asarray(x, dtype=float)
    return np.stack([partial(f, x, i, h) for i in range(x.shape[0])])


def directional(f: Field, x: np.ndarray, v: np.ndarray, h: float) -> np.ndarray:
    """Central difference of ``f`` along the vector ``v``."""
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    return (np.asarray(f(x + h * v)) - np.asarray(f(x - h * v))) / (2.0 * h)


def second_partial(f: Field, x: np.ndarray, i: int, h: float) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    step = np.zeros_like(x)
    step[i] = h
    return (np.asarray(f(x + step)) - 2.0 * np.asarray(f(x)) + np.asarray(f(x - step))) / h**2


def laplacian(f: Field, x: np.ndarray, h: float) -> np.ndarray:
    """Flat Laplacian from three-point second differences."""
    x = np.asarray(x, dtype=float)
    return sum(second_partial(f, x, i, h) for i in range(x.shape[0]))


def interior_grid(
    low: Sequence[float],
    high: Sequence[float],
    points: int | None = None,
    margin: float | None = None,
) -> np.ndarray:
    """Tensor grid of ``points**n`` samples kept ``margin`` away from the box faces."""
    cfg = settings.get("numerics", {})
    points = int(cfg.get("grid_points", 5) if points is None else points)
    margin = float(cfg.get("margin", 0.2) if margin is None else margin)
    if points < 1:
        raise ValueError(f"grid needs at least one point per axis, got {points}")
    low = np.asarray(low, dtype=float)
    high = np.asarray(high, dtype=float)
    axes = []
    for lo, hi in zip(low, high):
        pad = margin * (hi - lo)
        if points == 1:
            axes.append(np.array([0.5 * (lo + hi)]))
        else:
            axes.append(np.linspace(lo + pad, hi - pad, points))
    return np.array(list(itertools.product(*axes)), dtype=float)


def observed_order(steps: Sequence[float], errors: Sequence[float]) -> float:
    """Least-squares slope of log(error) against log(step).

    Errors that have already reached zero are floored so the fit stays finite.
    """
    steps = np.asarray(steps, dtype=float)
    errors = np.maximum(np.asarray(errors, dtype=float), 1e-300)
    if steps.size < 2:
        raise ValueError("need at least two (step, error) pairs to fit an order")
    slope, _ = np.polyfit(np.log(steps), np.log(errors), 1)
    return float(slope)


def sweep_max(
    residual: Callable[[np.ndarray], float],
    points: Iterable[np.ndarray],
    workers: int | None = None,
) -> float:
    """Max of ``residual`` over sample points.

    With ``workers > 1`` the evaluations run on a thread pool; the reduction is
    a max, so the result does not depend on completion order.
    """
    if workers is None:
        workers = int(settings.get("numerics", {}).get("workers", 1))
    points = list(points)
    if not points:
        return 0.0
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(residual, points))
    else:
        values = [residual(p) for p in points]
    worst = float(np.max(values))
    logger.debug("Swept %d points, max residual %.3e", len(points), worst)
    return worst


def max_norm(value: np.ndarray) -> float:
    """Largest absolute entry (0 for empty arrays)."""
    arr = np.asarray(value)
    return float(np.max(np.abs(arr))) if arr.size else 0.0
