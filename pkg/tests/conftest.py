"""Shared fixtures and hypothesis strategies."""
import copy
import math

import pytest
from hypothesis import strategies as st

from gaussian_core.states import SymmetricTwoModeCM
from model.params import SystemParams
from model.steady_state import oracle_cross_blocks
from utils import config_manager


@pytest.fixture(autouse=True, scope="session")
def default_config():
    """Run the suite against the built-in defaults, independent of the working directory."""
    config_manager.set_config(copy.deepcopy(config_manager.DEFAULT_CONFIG))
    yield
    config_manager.reset_config()


@pytest.fixture
def fresh_config():
    """A private copy of the defaults for tests that change settings."""
    config = copy.deepcopy(config_manager.DEFAULT_CONFIG)
    config_manager.set_config(config)
    oracle_cross_blocks.cache_clear()
    yield config
    config_manager.set_config(copy.deepcopy(config_manager.DEFAULT_CONFIG))


@pytest.fixture
def fig2_params():
    """Operating point of the n_th sweeps at r = 1.5."""
    return SystemParams(coop=34.0, squeeze=1.5, nth=0.0, damping_ratio=0.05)


@pytest.fixture
def anchor_params():
    return SystemParams(coop=1.0, squeeze=0.0, nth=1.0, damping_ratio=1.0)


@st.composite
def physical_states(draw, max_s=20.0):
    """Symmetric two-mode states with s in [1/2, max_s] and s^2 - k^2 >= 1/4."""
    s = draw(st.floats(min_value=0.5, max_value=max_s))
    u = draw(st.floats(min_value=-1.0, max_value=1.0))
    return SymmetricTwoModeCM(s, u * math.sqrt(s * s - 0.25))


@st.composite
def system_params(draw, max_coop=100.0, max_squeeze=3.0, max_nth=50.0):
    return SystemParams(
        coop=draw(st.floats(min_value=0.0, max_value=max_coop)),
        squeeze=draw(st.floats(min_value=0.0, max_value=max_squeeze)),
        nth=draw(st.floats(min_value=0.0, max_value=max_nth)),
        damping_ratio=draw(st.floats(min_value=0.01, max_value=1.0)),
    )
