import pytest
import numpy as np

from qutritwalk.coinspace import grover_coin
from qutritwalk.types import ExperimentConfig
from qutritwalk.walk import LOCALIZED_COIN, NONLOCALIZED_COIN, initial_state


@pytest.fixture
def grover():
    return grover_coin()


@pytest.fixture
def localized_state():
    def _state(t_max):
        return initial_state(LOCALIZED_COIN, t_max)
    return _state


@pytest.fixture
def nonlocalized_state():
    def _state(t_max):
        return initial_state(NONLOCALIZED_COIN, t_max)
    return _state


@pytest.fixture
def rng():
    return np.random.default_rng(20240602)


@pytest.fixture
def experiment_config(tmp_path):
    def _config(model, **kwargs):
        kwargs.setdefault('output_dir', str(tmp_path / model))
        return ExperimentConfig(model=model, **kwargs)
    return _config


@pytest.fixture
def config_file(tmp_path):
    def _write(text, name='config.yaml'):
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return str(path)
    return _write
