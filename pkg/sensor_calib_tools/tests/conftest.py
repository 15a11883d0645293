"""
Pytest configuration and fixtures for Sensor Calibration Tools.
"""

import logging
from pathlib import Path

import numpy as np
import pytest

from sensor_calib_tools.estimation.models import AffineTransform, DataMatrix
from sensor_calib_tools.simulation.montecarlo import reference_transform

FIXTURES_DIR = Path(__file__).resolve().parent / "fixtures"


def pytest_addoption(parser):
    """Add custom command line options."""
    parser.addoption("--mc-runs", action="store", type=int, default=200,
                     help="Trials per sigma for the desk-scale Monte Carlo check")
    parser.addoption("--board-data", action="store", type=Path, default=None,
                     help="Real board recording (canonical CSV) for the board checks")
    parser.addoption("--run-slow", action="store_true", default=False,
                     help="Run the long Monte Carlo and board checks")


def pytest_configure(config):
    """Register custom markers."""
    config.addinivalue_line("markers", "slow: long-running statistical checks (enable with --run-slow)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def test_options(request):
    """Provide test options from command line options."""
    return {
        "mc_runs": request.config.getoption("--mc-runs"),
        "board_data": request.config.getoption("--board-data"),
    }


@pytest.fixture
def fixtures_dir():
    return FIXTURES_DIR


@pytest.fixture
def reference():
    return reference_transform()


def make_pair(transform: AffineTransform, n: int = 60, sigma: float = 0.0, seed: int = 0):
    """Origins in [0, 100]^q and their (optionally noisy) images under ``transform``."""
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0.0, 100.0, size=(transform.q, n))
    x = theta + sigma * rng.standard_normal(theta.shape)
    y = transform.a @ theta + transform.b[:, None] + sigma * rng.standard_normal(theta.shape)
    return DataMatrix(theta), DataMatrix(x), DataMatrix(y)


def random_transform(q: int, seed: int = 0) -> AffineTransform:
    """A well-conditioned random transform."""
    rng = np.random.default_rng(seed)
    a = np.eye(q) + 0.3 * rng.standard_normal((q, q))
    return AffineTransform(a, rng.uniform(-50.0, 50.0, size=q))


@pytest.fixture(autouse=True)
def reset_package_logger():
    """CLI runs attach handlers to the package logger; drop them after each test."""
    yield
    logger = logging.getLogger("sensor_calib_tools")
    logger.handlers.clear()
    logger.setLevel(logging.NOTSET)
