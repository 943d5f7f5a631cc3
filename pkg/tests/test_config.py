"""Tests for centralized Config class."""

import importlib

import pytest

from src.simplex_step import config as config_module
from src.simplex_step.config import Config

ENV_KEYS = ("SIMPLEX_STEP_OUTPUT_DIR", "SIMPLEX_STEP_LOG_LEVEL", "SIMPLEX_STEP_MAX_WORKERS")


@pytest.fixture
def reload_config(monkeypatch):
    """Reload the config module under a patched environment, then restore it."""

    def _reload(**env):
        for key in ENV_KEYS:
            monkeypatch.delenv(key, raising=False)
        for key, value in env.items():
            monkeypatch.setenv(key, value)
        return importlib.reload(config_module).Config

    yield _reload

    for key in ENV_KEYS:
        monkeypatch.delenv(key, raising=False)
    importlib.reload(config_module)


def test_config_defaults():
    """Verify default configuration values."""
    assert Config.EPS_INTERIOR == 1e-12
    assert Config.B_MAX == 1.0 - 1e-9
    assert Config.ETA_FLOOR == 0.0
    assert Config.KL_CONVERGENCE_TOL == 1e-3
    assert Config.COLLAPSE_THRESHOLD == 1e-6
    assert Config.SWEEP_POINTS == 101


@pytest.mark.unit
def test_config_validation_passes():
    assert Config.validate() is True


@pytest.mark.unit
def test_config_validation_collects_errors():
    """validate() reports every broken constant in one message."""
    original_b_max = Config.B_MAX
    original_points = Config.SWEEP_POINTS
    try:
        Config.B_MAX = 1.5
        Config.SWEEP_POINTS = 2
        with pytest.raises(ValueError, match="Config validation failed") as exc_info:
            Config.validate()
        assert "B_MAX" in str(exc_info.value)
        assert "SWEEP_POINTS" in str(exc_info.value)
    finally:
        Config.B_MAX = original_b_max
        Config.SWEEP_POINTS = original_points


@pytest.mark.unit
def test_env_overrides(reload_config):
    cfg = reload_config(
        SIMPLEX_STEP_OUTPUT_DIR="/tmp/out",
        SIMPLEX_STEP_LOG_LEVEL="debug",
        SIMPLEX_STEP_MAX_WORKERS="4",
    )
    assert cfg.DEFAULT_OUTPUT_DIR == "/tmp/out"
    assert cfg.LOG_LEVEL == "DEBUG"
    assert cfg.MAX_WORKERS == 4


@pytest.mark.unit
def test_env_defaults_when_unset(reload_config):
    cfg = reload_config()
    assert cfg.DEFAULT_OUTPUT_DIR == "./results"
    assert cfg.LOG_LEVEL == "WARNING"
    assert cfg.MAX_WORKERS == 1


@pytest.mark.unit
@pytest.mark.parametrize("value", ["0", "-2", "many"])
def test_invalid_max_workers_rejected(reload_config, value):
    with pytest.raises(ValueError, match="SIMPLEX_STEP_MAX_WORKERS"):
        reload_config(SIMPLEX_STEP_MAX_WORKERS=value)


@pytest.mark.unit
def test_invalid_log_level_rejected(reload_config):
    with pytest.raises(ValueError, match="SIMPLEX_STEP_LOG_LEVEL"):
        reload_config(SIMPLEX_STEP_LOG_LEVEL="chatty")
