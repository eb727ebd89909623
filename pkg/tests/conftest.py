"""Shared test fixtures."""

from __future__ import annotations

import numpy as np
import pytest

from gaugekit.events import EventBus
from gaugekit.modules.forms import Chart, MetricField


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so randomized sweeps are reproducible."""
    return np.random.default_rng(42)


@pytest.fixture
def r3() -> Chart:
    return Chart.cube(3, -1.0, 1.0, name="R3")


@pytest.fixture
def r4() -> Chart:
    return Chart.cube(4, -1.0, 1.0, name="R4")


@pytest.fixture
def euclidean3(r3: Chart) -> MetricField:
    return MetricField.euclidean(r3)


@pytest.fixture
def minkowski(r4: Chart) -> MetricField:
    return MetricField.minkowski(r4)


@pytest.fixture
def event_bus() -> EventBus:
    """Create a fresh event bus for each test."""
    return EventBus()
