"""Pytest fixtures and test utilities for the simplex-step test suite."""

import numpy as np
import pytest
from loguru import logger

from src.simplex_step.simplex import make_target

# ============================================================================
# PYTEST CONFIGURATION & MARKERS
# ============================================================================


def pytest_configure(config):
    """Register custom markers for test categorization."""
    config.addinivalue_line("markers", "unit: Unit tests (fast, no external dependencies)")
    config.addinivalue_line("markers", "slow: marks tests as slow (full experiment runs)")
    config.addinivalue_line("markers", "integration: Integration tests (drive the CLI end to end)")


@pytest.fixture(autouse=True)
def reset_loguru():
    """
    Drop loguru sinks installed during a test.

    The CLI replaces the default sink with one bound to the sys.stderr of
    the moment, which under capture is a per-test stream.
    """
    yield
    logger.remove()


# ============================================================================
# SHARED FIXTURES
# ============================================================================


@pytest.fixture
def rng():
    """Seeded generator; every randomized test is reproducible."""
    return np.random.default_rng(20240611)


@pytest.fixture
def q_a():
    """Phase-one target of the shift experiment."""
    return make_target([0.7, 0.2, 0.1])


@pytest.fixture
def q_b():
    """Phase-two target of the shift experiment."""
    return make_target([0.1, 0.2, 0.7])
