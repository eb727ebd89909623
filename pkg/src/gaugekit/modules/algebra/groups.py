"""Finite groups and their actions on finite sets.

Group elements and points are dense integer indices; labels are kept only for
display and fixtures. All verification is by brute-force enumeration.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Hashable, Sequence

from gaugekit.errors import ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FiniteGroup:
    """Group given by its full Cayley table ``cayley[a][b] = a·b``."""

    cayley: tuple[tuple[int, ...], ...]
    labels: tuple[Hashable, ...] = ()
    name: str = "G"
    identity: int = field(init=False)
    inverse: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        order = len(self.cayley)
        if order == 0:
            raise ValidationError("a group needs at least one element")
        for row in self.cayley:
            if len(row) != order or any(not 0 <= v < order for v in row):
                raise ValidationError(f"{self.name}: Cayley table must be {order}x{order} with entries in range")
        if self.labels and len(self.labels) != order:
            raise ValidationError(f"{self.name}: {len(self.labels)} labels for {order} elements")

        identity = next(
            (e for e in range(order) if all(self.cayley[e][g] == g == self.cayley[g][e] for g in range(order))),
            None,
        )
        if identity is None:
            raise ValidationError(f"{self.name}: no two-sided identity")
        object.__setattr__(self, "identity", identity)

        inverse = []
        for g in range(order):
            inv = next((h for h in range(order) if self.cayley[g][h] == identity == self.cayley[h][g]), None)
            if inv is None:
                raise ValidationError(f"{self.name}: element {g} has no inverse")
            inverse.append(inv)
        object.__setattr__(self, "inverse", tuple(inverse))

        for a, b, c in itertools.product(range(order), repeat=3):
            if self.cayley[self.cayley[a][b]][c] != self.cayley[a][self.cayley[b][c]]:
                raise ValidationError(f"{self.name}: associativity fails on ({a}, {b}, {c})")

    @property
    def order(self) -> int:
        return len(self.cayley)

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def label(self, a: int) -> Hashable:
        return self.labels[a] if self.labels else a

    def index(self, label: Hashable) -> int:
        if not self.labels:
            return int(label)  # type: ignore[arg-type]
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValidationError(f"{self.name}: unknown element label {label!r}") from None

    def is_subgroup(self, subset: frozenset[int]) -> bool:
        if self.identity not in subset:
            return False
        return all(self.mul(a, self.inv(b)) in subset for a in subset for b in subset)

    def generated_by(self, generators: Sequence[int]) -> frozenset[int]:
        """Smallest subgroup containing ``generators``."""
        found = {self.identity}
        frontier = list(found)
        while frontier:
            a = frontier.pop()
            for g in generators:
                b = self.mul(a, g)
                if b not in found:
                    found.add(b)
                    frontier.append(b)
        return frozenset(found)


def group_from_permutations(perms: Sequence[tuple[int, ...]], name: str) -> FiniteGroup:
    """Group of permutations under composition ``(p·q)(i) = p[q[i]]``."""
    perms = [tuple(p) for p in perms]
    position = {p: k for k, p in enumerate(perms)}
    table = []
    for p in perms:
        row = []
        for q in perms:
            composed = tuple(p[q[i]] for i in range(len(q)))
            if composed not in position:
                raise ValidationError(f"{name}: permutations are not closed under composition")
            row.append(position[composed])
        table.append(tuple(row))
    return FiniteGroup(cayley=tuple(table), labels=tuple(perms), name=name)


def symmetric_group(n: int) -> FiniteGroup:
    """S_n as permutations of (0, ..., n-1); index 0 is the identity."""
    return group_from_permutations(list(itertools.permutations(range(n))), name=f"S{n}")


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValidationError(f"cyclic group order must be positive, got {n}")
    table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return FiniteGroup(cayley=table, labels=tuple(range(n)), name=f"Z{n}")


def trivial_group() -> FiniteGroup:
    return FiniteGroup(cayley=((0,),), labels=("e",), name="1")


@dataclass(frozen=True)
class FiniteAction:
    """Left action given by ``table[g][x] = g·x`` on indexed points."""

    group: FiniteGroup
    points: tuple[Hashable, ...]
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        G = self.group
        size = len(self.points)
        if len(self.table) != G.order:
            raise ValidationError(f"action table has {len(self.table)} rows, group has {G.order} elements")
        for row in self.table:
            if len(row) != size or any(not 0 <= v < size for v in row):
                raise ValidationError(f"action rows must map {size} points into range")
        for x in range(size):
            if self.table[G.identity][x] != x:
                raise ValidationError(f"identity moves point {self.points[x]!r}")
        for g, h, x in itertools.product(G.elements, G.elements, range(size)):
            if self.table[g][self.table[h][x]] != self.table[G.mul(g, h)][x]:
                raise ValidationError(
                    f"compatibility fails: g={G.label(g)!r}, h={G.label(h)!r}, x={self.points[x]!r}"
                )

    def act(self, g: int, x: int) -> int:
        return self.table[g][x]

    def point_index(self, label: Hashable) -> int:
        try:
            return self.points.index(label)
        except ValueError:
            raise ValidationError(f"unknown point {label!r}") from None


def action_from_table(
    group: FiniteGroup, points: Sequence[Hashable], mapping: dict[tuple[Hashable, Hashable], Hashable]
) -> FiniteAction:
    """Build an action from ``{(group label, point label): point label}``."""
    points = tuple(points)
    pos = {p: k for k, p in enumerate(points)}
    table = []
    for g in group.elements:
        row = []
        for x in points:
            key = (group.label(g), x)
            if key not in mapping:
                raise ValidationError(f"action table missing entry for {key!r}")
            row.append(pos[mapping[key]])
        table.append(tuple(row))
    return FiniteAction(group=group, points=points, table=tuple(table))


def natural_action(group: FiniteGroup) -> FiniteAction:
    """Permutation group acting on {1, ..., n} (labels are 1-based)."""
    n = len(group.labels[0])
    table = tuple(tuple(group.labels[g][x] for x in range(n)) for g in group.elements)
    return FiniteAction(group=group, points=tuple(range(1, n + 1)), table=table)


def trivial_action(group: FiniteGroup, points: Sequence[Hashable]) -> FiniteAction:
    points = tuple(points)
    table = tuple(tuple(range(len(points))) for _ in group.elements)
    return FiniteAction(group=group, points=points, table=table)


def regular_action(group: FiniteGroup) -> FiniteAction:
    """Left multiplication of the group on itself (free and transitive)."""
    points = tuple(group.label(g) for g in group.elements)
    return FiniteAction(group=group, points=points, table=group.cayley)


def left_cosets(group: FiniteGroup, subgroup: frozenset[int]) -> list[frozenset[int]]:
    """Cosets aH in order of their smallest representative."""
    if not group.is_subgroup(subgroup):
        raise ValidationError(f"{sorted(subgroup)} is not a subgroup of {group.name}")
    cosets: list[frozenset[int]] = []
    for a in group.elements:
        coset = frozenset(group.mul(a, h) for h in subgroup)
        if coset not in cosets:
            cosets.append(coset)
    return cosets


def coset_action(group: FiniteGroup, subgroup: frozenset[int]) -> FiniteAction:
    """Action of G on G/H by left multiplication."""
    cosets = left_cosets(group, subgroup)
    pos = {c: k for k, c in enumerate(cosets)}
    table = tuple(
        tuple(pos[frozenset(group.mul(g, a) for a in c)] for c in cosets) for g in group.elements
    )
    return FiniteAction(group=group, points=tuple(cosets), table=table)


def orbits(action: FiniteAction) -> list[frozenset[Hashable]]:
    """Partition of the points into orbits, in order of first appearance."""
    seen: set[int] = set()
    blocks: list[frozenset[Hashable]] = []
    for x in range(len(action.points)):
        if x in seen:
            continue
        orbit = {action.act(g, x) for g in action.group.elements}
        seen |= orbit
        blocks.append(frozenset(action.points[y] for y in sorted(orbit)))
    return blocks


def stabilizer(action: FiniteAction, x: Hashable) -> frozenset[int]:
    """Indices of the group elements fixing the point labelled ``x``."""
    xi = action.point_index(x)
    return frozenset(g for g in action.group.elements if action.act(g, xi) == xi)


def conjugacy_check(action: FiniteAction, x: Hashable, g: int) -> bool:
    """True iff the stabilizer of g·x equals g K_x g⁻¹."""
    G = action.group
    y = action.points[action.act(g, action.point_index(x))]
    conjugated = frozenset(G.mul(G.mul(g, k), G.inv(g)) for k in stabilizer(action, x))
    return stabilizer(action, y) == conjugated


def is_free(action: FiniteAction) -> bool:
    identity = frozenset({action.group.identity})
    return all(stabilizer(action, x) == identity for x in action.points)


def is_transitive(action: FiniteAction) -> bool:
    return len(orbits(action)) == 1


@dataclass
class EquivalenceWitness:
    """Result of comparing an orbit with the coset space G/K_x."""

    base_point: Hashable
    mapping: dict[Hashable, frozenset[int]]
    violation: tuple[int, Hashable] | None = None

    @property
    def ok(self) -> bool:
        return self.violation is None


def coset_action_equivalence(action: FiniteAction, x: Hashable) -> EquivalenceWitness:
    """Build f(a·x) = aK_x on the orbit of x and check f(g·y) = g·f(y)."""
    G = action.group
    xi = action.point_index(x)
    K = stabilizer(action, x)
    mapping: dict[Hashable, frozenset[int]] = {}
    for a in G.elements:
        y = action.points[action.act(a, xi)]
        coset = frozenset(G.mul(a, k) for k in K)
        if y in mapping and mapping[y] != coset:
            return EquivalenceWitness(base_point=x, mapping=mapping, violation=(a, y))
        mapping[y] = coset

    for g in G.elements:
        for y, coset in mapping.items():
            gy = action.points[action.act(g, action.point_index(y))]
            if mapping[gy] != frozenset(G.mul(g, c) for c in coset):
                logger.warning("Coset equivariance fails at g=%s, y=%r", G.label(g), y)
                return EquivalenceWitness(base_point=x, mapping=mapping, violation=(g, y))
    return EquivalenceWitness(base_point=x, mapping=mapping)
