"""Cover/cocycle fixtures stored as JSON under ``gaugekit/config/fixtures``.

Schema::

    {
      "name": "z2_double_cover",
      "description": "free text",
      "group": {"kind": "finite", "cyclic": 2, "labels": [1, -1]}
             | {"kind": "matrix", "dim": 2}
             | {"kind": "blade", "signature": [2, 0]},
      "fiber": {"kind": "interval", "low": -1, "high": 1},      (optional)
      "charts": ["U1", "U2"],
      "overlaps": [
        {"charts": ["U1", "U2"],
         "components": [{"name": "W1", "samples": [[3.0], [3.2]],
                         "low": [2.9], "high": [3.4]}]}       (low/high optional)
      ],
      "transitions": [
        {"charts": ["U1", "U2"], "values": {"W1": 1, "W2": -1}}
      ]
    }

Transition values are constant per overlap component: element labels for
finite groups, row-major nested lists for matrices, blade coefficient lists
(length 2^n, bitmask order) for Clifford groups. Only one direction of each
pair needs to be given.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from gaugekit.config import PACKAGE_DIR
from gaugekit.errors import FixtureNotFoundError, ValidationError
from gaugekit.modules.algebra.groups import FiniteGroup, cyclic_group
from gaugekit.modules.bundles.cocycle import Cocycle, GroupKind, piecewise_constant
from gaugekit.modules.bundles.cover import Cover, OverlapComponent, box_region
from gaugekit.modules.clifford.algebra import CliffordElement, Signature

logger = logging.getLogger(__name__)

FIXTURE_DIR = PACKAGE_DIR / "config" / "fixtures"


@dataclass
class Fixture:
    name: str
    description: str
    cocycle: Cocycle
    fiber: dict[str, Any] = field(default_factory=dict)


def fixture_names() -> list[str]:
    return sorted(p.stem for p in FIXTURE_DIR.glob("*.json"))


def _resolve(name_or_path: str | Path) -> Path:
    path = Path(name_or_path)
    if path.suffix == ".json" and path.exists():
        return path
    candidate = FIXTURE_DIR / f"{name_or_path}.json"
    if candidate.exists():
        return candidate
    raise FixtureNotFoundError(f"unknown fixture {str(name_or_path)!r}; available: {fixture_names()}")


def load_fixture(name_or_path: str | Path) -> Fixture:
    path = _resolve(name_or_path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path.name}: invalid JSON ({exc})") from exc
    try:
        return _build(data)
    except KeyError as exc:
        raise ValidationError(f"{path.name}: missing field {exc}") from exc


def _build(data: dict[str, Any]) -> Fixture:
    name = data["name"]
    cover = Cover(
        tuple(data["charts"]),
        {
            tuple(entry["charts"]): tuple(_component(c) for c in entry["components"])
            for entry in data["overlaps"]
        },
    )
    group_data = data["group"]
    kind = GroupKind(group_data["kind"])
    params: dict[str, Any] = {}
    if kind is GroupKind.FINITE:
        group = cyclic_group(int(group_data["cyclic"]))
        if "labels" in group_data:
            group = FiniteGroup(cayley=group.cayley, labels=tuple(group_data["labels"]), name=group.name)
        params["group"] = group
        convert = group.index
    elif kind is GroupKind.MATRIX:
        params["dim"] = int(group_data["dim"])
        convert = lambda v: np.array(v, dtype=float)  # noqa: E731
    else:
        sig = Signature(*group_data["signature"])
        params["signature"] = sig
        convert = lambda v: CliffordElement(sig, np.array(v, dtype=float))  # noqa: E731

    transitions = {}
    for entry in data["transitions"]:
        a, b = entry["charts"]
        values = {comp: convert(v) for comp, v in entry["values"].items()}
        transitions[(a, b)] = piecewise_constant(cover, a, b, values)

    cocycle = Cocycle(cover, kind, transitions, name=name, **params)
    logger.debug("Loaded fixture %s (%s, %d charts)", name, kind.value, len(cover.charts))
    return Fixture(name, data.get("description", ""), cocycle, data.get("fiber", {}))


def _component(entry: dict[str, Any]) -> OverlapComponent:
    region = box_region(entry["low"], entry["high"]) if "low" in entry else None
    return OverlapComponent(entry["name"], np.array(entry["samples"], dtype=float), region)
