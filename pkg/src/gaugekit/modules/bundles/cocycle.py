"""Transition cocycles, cochains, validation and coboundary search."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable

import numpy as np

from gaugekit.config import tolerance
from gaugekit.errors import ChartError, UnsupportedError, ValidationError
from gaugekit.modules.algebra.groups import FiniteGroup
from gaugekit.modules.algebra.lie import checked_inverse
from gaugekit.modules.bundles.cover import Cover
from gaugekit.modules.clifford.algebra import CliffordElement, Signature, clifford_inverse

logger = logging.getLogger(__name__)

Transition = Callable[[np.ndarray], Any]


class GroupKind(str, Enum):
    FINITE = "finite"
    MATRIX = "matrix"
    BLADE = "blade"


@dataclass(frozen=True)
class GroupOps:
    kind: GroupKind
    mul: Callable[[Any, Any], Any]
    inv: Callable[[Any], Any]
    identity: Any
    distance: Callable[[Any, Any], float]


def group_ops(
    kind: GroupKind,
    group: FiniteGroup | None = None,
    dim: int | None = None,
    signature: Signature | None = None,
) -> GroupOps:
    if kind is GroupKind.FINITE:
        if group is None:
            raise ValidationError("a finite cocycle needs its group")
        return GroupOps(kind, group.mul, group.inv, group.identity, lambda a, b: 0.0 if a == b else 1.0)
    if kind is GroupKind.MATRIX:
        if dim is None:
            raise ValidationError("a matrix cocycle needs its dimension")
        return GroupOps(
            kind,
            lambda a, b: np.asarray(a) @ np.asarray(b),
            checked_inverse,
            np.eye(dim),
            lambda a, b: float(np.max(np.abs(np.asarray(a) - np.asarray(b)))),
        )
    if signature is None:
        raise ValidationError("a blade cocycle needs its Clifford signature")
    return GroupOps(
        kind,
        lambda a, b: a * b,
        clifford_inverse,
        CliffordElement.scalar(signature),
        lambda a, b: a.distance(b),
    )


@dataclass(frozen=True, eq=False)
class Cocycle:
    """Transition functions g_αβ on the overlaps of a cover.

    Directions declared only one way get g_βα = g_αβ⁻¹ filled in.
    """

    cover: Cover
    kind: GroupKind
    transitions: dict[tuple[str, str], Transition]
    group: FiniteGroup | None = None
    dim: int | None = None
    signature: Signature | None = None
    name: str = "g"
    ops: GroupOps = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "ops", group_ops(self.kind, self.group, self.dim, self.signature))
        transitions = dict(self.transitions)
        for (a, b), fn in list(transitions.items()):
            if a != b and (a, b) not in self.cover.overlaps:
                raise ValidationError(f"{self.name}: transition ({a}, {b}) has no overlap in the cover")
            if (b, a) not in transitions:
                transitions[(b, a)] = _inverted(fn, self.ops.inv)
        object.__setattr__(self, "transitions", transitions)

    def value(self, a: str, b: str, x: np.ndarray) -> Any:
        if a == b and (a, a) not in self.transitions:
            return self.ops.identity
        if a != b and not self.cover.in_overlap(a, b, x):
            raise ChartError(f"{self.name}: point {np.asarray(x)} lies outside the overlap of {a} and {b}")
        fn = self.transitions.get((a, b))
        if fn is None:
            raise ValidationError(f"{self.name}: no transition declared for ({a}, {b})")
        return fn(np.asarray(x, dtype=float))

    def with_transitions(self, transitions: dict[tuple[str, str], Transition], name: str | None = None, **kw: Any) -> Cocycle:
        params = {"group": self.group, "dim": self.dim, "signature": self.signature, "kind": self.kind}
        params.update(kw)
        return Cocycle(self.cover, transitions=transitions, name=name or self.name, **params)


def _inverted(fn: Transition, inv: Callable[[Any], Any]) -> Transition:
    return lambda x: inv(fn(x))


def piecewise_constant(cover: Cover, a: str, b: str, values: dict[str, Any]) -> Transition:
    """Transition that is constant on each named overlap component."""
    names = {comp.name for comp in cover.overlap(a, b)}
    missing = names - set(values)
    if missing:
        raise ValidationError(f"transition ({a}, {b}) lacks values for components {sorted(missing)}")
    return lambda x: values[cover.component_of(a, b, x).name]


@dataclass
class CocycleReport:
    identity_residual: float
    inverse_residual: float
    cocycle_residual: float
    tolerance: float
    samples: int

    @property
    def residual(self) -> float:
        return max(self.identity_residual, self.inverse_residual, self.cocycle_residual)

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


def _pair_samples(c: Cocycle, samples: dict[tuple[str, str], np.ndarray] | None) -> dict[tuple[str, str], np.ndarray]:
    if samples is None:
        return {pair: np.vstack([comp.samples for comp in comps]) for pair, comps in c.cover.overlaps.items()}
    out = {}
    for (a, b), pts in samples.items():
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        for x in pts:
            if not c.cover.in_overlap(a, b, x):
                raise ChartError(f"sample {x} is not in the overlap of {a} and {b}")
        out[(a, b)] = pts
    return out


def validate_cocycle(
    c: Cocycle,
    samples: dict[tuple[str, str], np.ndarray] | None = None,
    tol: float | None = None,
) -> CocycleReport:
    """Max residuals of g_αα = e, g_αβ g_βα = e and g_αβ g_βγ g_γα = e over samples.

    Finite groups are compared exactly (tolerance 0).
    """
    ops = c.ops
    if tol is None:
        tol = 0.0 if c.kind is GroupKind.FINITE else tolerance("geometric")
    pts = _pair_samples(c, samples)
    e = ops.identity
    ident = inverse = cyc = 0.0
    count = 0

    for a in c.cover.charts:
        if (a, a) in c.transitions:
            for x in c.cover.chart_samples(a):
                ident = max(ident, ops.distance(c.value(a, a, x), e))

    for (a, b), xs in pts.items():
        for x in xs:
            count += 1
            inverse = max(inverse, ops.distance(ops.mul(c.value(a, b, x), c.value(b, a, x)), e))
            for g in c.cover.charts:
                if g in (a, b) or not (c.cover.in_overlap(b, g, x) and c.cover.in_overlap(g, a, x)):
                    continue
                loop = ops.mul(ops.mul(c.value(a, b, x), c.value(b, g, x)), c.value(g, a, x))
                cyc = max(cyc, ops.distance(loop, e))

    report = CocycleReport(ident, inverse, cyc, tol, count)
    logger.debug("Cocycle %s: residual %.3e over %d samples", c.name, report.residual, count)
    return report


@dataclass(frozen=True, eq=False)
class Cochain:
    """Per-chart group-valued functions g_α (constants are accepted)."""

    cover: Cover
    kind: GroupKind
    values: dict[str, Any]

    def __post_init__(self) -> None:
        missing = set(self.cover.charts) - set(self.values)
        if missing:
            raise ValidationError(f"cochain lacks values on charts {sorted(missing)}")

    def at(self, a: str, x: np.ndarray) -> Any:
        v = self.values[a]
        return v(np.asarray(x, dtype=float)) if callable(v) else v

    def inverse(self, ops: GroupOps) -> Cochain:
        return Cochain(
            self.cover,
            self.kind,
            {a: (lambda x, a=a: ops.inv(self.at(a, x))) for a in self.cover.charts},
        )


def identity_cochain(c: Cocycle) -> Cochain:
    return Cochain(c.cover, c.kind, {a: c.ops.identity for a in c.cover.charts})


def apply_gauge_cochain(c: Cocycle, phi: Cochain) -> Cocycle:
    """g'_αβ = g_α g_αβ g_β⁻¹."""
    if phi.kind is not c.kind or phi.cover is not c.cover:
        raise ValidationError("cochain and cocycle must share cover and group kind")
    ops = c.ops

    def transformed(a: str, b: str) -> Transition:
        return lambda x: ops.mul(ops.mul(phi.at(a, x), c.value(a, b, x)), ops.inv(phi.at(b, x)))

    transitions = {pair: transformed(*pair) for pair in c.transitions}
    return c.with_transitions(transitions, name=f"{c.name}'")


@dataclass
class CochainSearch:
    """Result of an exhaustive search; ``witness`` is None when none of ``tried`` assignments works."""

    witness: Cochain | None
    tried: int

    @property
    def found(self) -> bool:
        return self.witness is not None


def _require_finite(*cocycles: Cocycle) -> FiniteGroup:
    for c in cocycles:
        if c.kind is not GroupKind.FINITE or c.group is None:
            raise UnsupportedError(f"{c.name}: cochain search is only decided for finite groups, got {c.kind.value}")
    group = cocycles[0].group
    if any(c.group != group or c.cover is not cocycles[0].cover for c in cocycles):
        raise ValidationError("cocycles must share cover and group")
    return group


def _search(c: Cocycle, matches: Callable[[dict[str, int]], bool]) -> CochainSearch:
    group = c.group
    charts = c.cover.charts
    tried = 0
    for choice in itertools.product(group.elements, repeat=len(charts)):
        tried += 1
        assignment = dict(zip(charts, choice))
        if matches(assignment):
            return CochainSearch(Cochain(c.cover, c.kind, assignment), tried)
    return CochainSearch(None, tried)


def _all_samples(c: Cocycle) -> list[tuple[str, str, np.ndarray]]:
    return [(a, b, x) for (a, b), comps in c.cover.overlaps.items() for comp in comps for x in comp.samples]


def is_coboundary(c: Cocycle) -> CochainSearch:
    """Look for constant g_α with g_αβ = g_α g_β⁻¹ on every overlap sample."""
    group = _require_finite(c)
    points = _all_samples(c)

    def matches(g: dict[str, int]) -> bool:
        return all(c.value(a, b, x) == group.mul(g[a], group.inv(g[b])) for a, b, x in points)

    result = _search(c, matches)
    logger.info("Coboundary search for %s: %s after %d assignments", c.name, result.found, result.tried)
    return result


def are_equivalent(c1: Cocycle, c2: Cocycle) -> CochainSearch:
    """Look for constant g_α with c2_αβ = g_α c1_αβ g_β⁻¹."""
    group = _require_finite(c1, c2)
    points = _all_samples(c1)

    def matches(g: dict[str, int]) -> bool:
        return all(
            c2.value(a, b, x) == group.mul(group.mul(g[a], c1.value(a, b, x)), group.inv(g[b]))
            for a, b, x in points
        )

    return _search(c1, matches)
