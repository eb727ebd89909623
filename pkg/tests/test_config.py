"""Tests for the YAML + env configuration layer."""

import pytest

from gaugekit import config
from gaugekit.config import get_output_dir, load_yaml_config, settings, tolerance


def test_packaged_defaults_are_loaded():
    for section in ("numerics", "tolerances", "quadrature", "transport", "reports", "monopole"):
        assert section in settings


def test_named_tolerances():
    assert tolerance("algebraic") <= tolerance("geometric") <= tolerance("finite_difference") <= tolerance("loose")
    with pytest.raises(KeyError):
        tolerance("vibes")


def test_override_file_merges_per_section(tmp_path, monkeypatch):
    override = tmp_path / "config.yaml"
    override.write_text("tolerances:\n  loose: 0.5\nmonopole:\n  charge: 1.5\n")
    monkeypatch.setenv("GAUGEKIT_CONFIG", str(override))
    merged = load_yaml_config()
    assert merged["tolerances"]["loose"] == 0.5
    assert merged["tolerances"]["algebraic"] == settings["tolerances"]["algebraic"]
    assert merged["monopole"]["charge"] == 1.5
    assert merged["monopole"]["cells"] == settings["monopole"]["cells"]


def test_missing_override_file(tmp_path, monkeypatch):
    monkeypatch.setenv("GAUGEKIT_CONFIG", str(tmp_path / "nope.yaml"))
    with pytest.raises(FileNotFoundError):
        load_yaml_config()


def test_override_must_be_a_mapping(tmp_path, monkeypatch):
    override = tmp_path / "config.yaml"
    override.write_text("- just\n- a list\n")
    monkeypatch.setenv("GAUGEKIT_CONFIG", str(override))
    with pytest.raises(ValueError):
        load_yaml_config()


def test_output_dir_prefers_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("GAUGEKIT_OUTPUT_DIR", str(tmp_path))
    assert get_output_dir() == tmp_path
    monkeypatch.delenv("GAUGEKIT_OUTPUT_DIR")
    assert get_output_dir().name == settings["reports"]["output_dir"]


def test_defaults_file_ships_with_package():
    assert config.DEFAULTS_PATH.exists()
