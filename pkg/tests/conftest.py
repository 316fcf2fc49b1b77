"""
Shared fixtures.
"""

import numpy as np
import pytest

from config.settings import settings
from domains.exponents.ledger import params_from_epsilon
from domains.exponents.schemas import SerrinCondition
from domains.grid.schemas import CylGrid


@pytest.fixture
def small_grid() -> CylGrid:
    return CylGrid(r_max=4.0, z_half=4.0, n_r=17, n_z=32)


@pytest.fixture
def fine_grid() -> CylGrid:
    return CylGrid(r_max=6.0, z_half=6.0, n_r=121, n_z=242)


@pytest.fixture
def family_params():
    return params_from_epsilon(0.05, 0.2)


@pytest.fixture
def serrin() -> SerrinCondition:
    return SerrinCondition(s=6.0, w=4.0, d=0.0, delta1=0.5)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def runs_dir(tmp_path, monkeypatch):
    monkeypatch.setattr(settings, "runs_dir", str(tmp_path))
    return tmp_path
