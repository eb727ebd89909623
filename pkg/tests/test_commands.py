"""Tests for the check registry and runner."""

import math

import pytest

from gaugekit.commands import MODULES, REGISTRY, Check, RunConfig, register, run
from gaugekit.errors import FixtureNotFoundError, ValidationError
from gaugekit.events import EventBus, EventType
from gaugekit.reports import CheckResult


def _broken(config, rng):
    raise ValidationError("fixture has no overlaps")


def _failing(config, rng):
    return [CheckResult("failing.value", 1.0, 0.0, "always fails")]


def test_registry_covers_every_module():
    assert {check.module for check in REGISTRY.values()} == set(MODULES)
    assert len(REGISTRY) == 20


def test_register_rejects_unknown_module_and_duplicates():
    with pytest.raises(ValueError):
        register("extra", "astrology", "not a module")
    with pytest.raises(ValueError):
        register("groups", "algebra", "already taken")(_failing)


def test_run_config_defaults():
    config = RunConfig()
    assert config.seed == 42
    assert config.format == "csv"
    assert config.selected() == sorted(REGISTRY)
    assert config.label == "check all"
    assert config.tolerance("geometric") == 1e-10
    assert RunConfig(tol=1e-3).tolerance("geometric") == 1e-3


@pytest.mark.parametrize(
    "kwargs",
    [
        {"command": "sweep"},
        {"format": "xml"},
        {"h": 0.0},
        {"cells": -4},
        {"levels": 1},
        {"target": "no-such-check"},
    ],
)
def test_run_config_validation(kwargs):
    with pytest.raises(ValidationError):
        RunConfig(**kwargs)


def test_run_config_checks_fixture():
    with pytest.raises(FixtureNotFoundError):
        RunConfig(target="cocycles", fixture="klein_bottle")


def test_commands_select_their_check():
    assert RunConfig(command="monopole").selected() == ["monopole"]
    assert RunConfig(command="holonomy").label == "holonomy"


def test_run_publishes_events(event_bus: EventBus):
    seen = []
    for event_type in EventType:
        event_bus.subscribe(event_type, seen.append)
    report = run(RunConfig(target="reps"), event_bus)

    assert report.passed
    assert report.command == "check reps"
    assert seen[0].event_type == EventType.RUN_STARTED
    assert seen[0].data["checks"] == ["reps"]
    assert seen[-1].event_type == EventType.RUN_FINISHED
    assert seen[-1].data["passed"] is True
    passed = [e for e in seen if e.event_type == EventType.CHECK_PASSED]
    assert len(passed) == len(report.checks) == 3


def test_run_is_reproducible(event_bus):
    first = run(RunConfig(target="groups"), event_bus)
    second = run(RunConfig(target="groups"), event_bus)
    assert [(c.name, c.value) for c in first.ordered] == [(c.name, c.value) for c in second.ordered]


def test_raising_check_becomes_error_row(event_bus, monkeypatch):
    monkeypatch.setitem(REGISTRY, "broken", Check("broken", "bundles", "raises", _broken))
    failed = []
    event_bus.subscribe(EventType.CHECK_FAILED, failed.append)
    report = run(RunConfig(target="broken"), event_bus)

    (row,) = report.checks
    assert row.name == "broken.error"
    assert math.isinf(row.value)
    assert "no overlaps" in row.detail
    assert not report.passed
    assert failed[0].data["name"] == "broken.error"
