"""Covers given by chart names and sampled overlap components."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from gaugekit.errors import ChartError, ValidationError

logger = logging.getLogger(__name__)

SAMPLE_MATCH = 1e-9


@dataclass(frozen=True, eq=False)
class OverlapComponent:
    """One connected piece of U_α ∩ U_β.

    Membership is decided by ``region`` if given, otherwise a point belongs
    when it coincides with one of the samples.
    """

    name: str
    samples: np.ndarray
    region: Callable[[np.ndarray], bool] | None = None

    def __post_init__(self) -> None:
        samples = np.atleast_2d(np.asarray(self.samples, dtype=float))
        if samples.size == 0:
            raise ValidationError(f"overlap component {self.name} has no samples")
        object.__setattr__(self, "samples", samples)

    def contains(self, x: np.ndarray) -> bool:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if self.region is not None:
            return bool(self.region(x))
        return bool(np.any(np.max(np.abs(self.samples - x), axis=1) <= SAMPLE_MATCH))

    def same_region(self, other: OverlapComponent) -> bool:
        return (
            self.name == other.name
            and self.samples.shape == other.samples.shape
            and bool(np.allclose(self.samples, other.samples))
        )


def box_region(low: np.ndarray, high: np.ndarray) -> Callable[[np.ndarray], bool]:
    low = np.asarray(low, dtype=float)
    high = np.asarray(high, dtype=float)
    return lambda x: bool(np.all(x >= low) and np.all(x <= high))


@dataclass(frozen=True, eq=False)
class Cover:
    """Chart names plus the overlap components of every ordered pair.

    Pairs given in one order only are mirrored; pairs given in both orders
    must describe the same components.
    """

    charts: tuple[str, ...]
    overlaps: dict[tuple[str, str], tuple[OverlapComponent, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        charts = tuple(self.charts)
        if len(set(charts)) != len(charts) or not charts:
            raise ValidationError(f"cover charts must be distinct and non-empty, got {charts}")
        overlaps: dict[tuple[str, str], tuple[OverlapComponent, ...]] = {}
        for (a, b), comps in self.overlaps.items():
            if a not in charts or b not in charts:
                raise ValidationError(f"overlap ({a}, {b}) names an unknown chart")
            if a == b:
                raise ValidationError(f"overlap ({a}, {a}) is implicit and must not be declared")
            overlaps[(a, b)] = tuple(comps)
        for (a, b), comps in list(overlaps.items()):
            mirror = overlaps.get((b, a))
            if mirror is None:
                overlaps[(b, a)] = comps
            elif len(mirror) != len(comps) or not all(m.same_region(c) for m, c in zip(mirror, comps)):
                raise ValidationError(f"overlaps ({a}, {b}) and ({b}, {a}) describe different regions")
        object.__setattr__(self, "charts", charts)
        object.__setattr__(self, "overlaps", overlaps)

    def overlap(self, a: str, b: str) -> tuple[OverlapComponent, ...]:
        return self.overlaps.get((a, b), ())

    def pairs(self) -> Iterator[tuple[str, str]]:
        return iter(sorted(self.overlaps))

    def component_of(self, a: str, b: str, x: np.ndarray) -> OverlapComponent:
        for comp in self.overlap(a, b):
            if comp.contains(x):
                return comp
        raise ChartError(f"point {np.asarray(x)} is not in the overlap of {a} and {b}")

    def in_overlap(self, a: str, b: str, x: np.ndarray) -> bool:
        return any(comp.contains(x) for comp in self.overlap(a, b))

    def chart_samples(self, a: str) -> np.ndarray:
        """All overlap samples that lie in chart ``a``."""
        pts = [comp.samples for (u, _), comps in self.overlaps.items() if u == a for comp in comps]
        if not pts:
            return np.empty((0, 1))
        return np.unique(np.vstack(pts), axis=0)
