import numpy as np
import pytest

from twolayer_swe.config.logger_config import LoggerConfig
from twolayer_swe.core.parameters import Parameters
from twolayer_swe.core.state import CellState, PrimitiveState, from_primitive


@pytest.fixture(autouse=True)
def isolated_environment(monkeypatch, tmp_path):
    """Keep output and log settings of the host away from the tests."""
    monkeypatch.setenv("TWOLAYER_OUTPUT_ROOT", str(tmp_path / "output"))
    monkeypatch.setenv("TWOLAYER_DEBUG_ENABLED", "No")
    for name in ("TWOLAYER_WORKERS", "TWOLAYER_DT_MAX"):
        monkeypatch.delenv(name, raising=False)
    LoggerConfig.reset()
    yield
    LoggerConfig.reset()


@pytest.fixture
def params():
    return Parameters(g=9.8, rho1=0.95, rho2=1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def make_cells(h1, u1, h2, u2, b, p: Parameters) -> CellState:
    """Conserved cells from depths, velocities and bathymetry."""
    return from_primitive(PrimitiveState.from_depths(h1, h2, u1, u2, b, p), p)


def make_primitive(h1, u1, h2, u2, b, p: Parameters) -> PrimitiveState:
    return PrimitiveState.from_depths(h1, h2, u1, u2, b, p)
