"""
Experiment configuration files: flat YAML mappings such as::

    model: phase_damping
    steps: 100
    gamma: 0.5
    initial_coin: localized
"""
import logging

from typing import Optional

import numpy as np
import yaml

from .experiments.experiment import Experiment, get_experiment_class
from .types import ConfigurationError, ExperimentConfig
from .utils import default_output_dir, merge_dicts
from .walk import LOCALIZED_COIN, NONLOCALIZED_COIN


logger = logging.getLogger(__name__)


INITIAL_COINS = {
    'localized': LOCALIZED_COIN,
    'nonlocalized': NONLOCALIZED_COIN,
}
CUSTOM_COIN_LABEL = 'custom'
# hand-written amplitudes are accepted this close to unit norm and renormalised
CUSTOM_COIN_NORM_TOLERANCE = 1e-6

KEYS = (
    Experiment.CONFIGURATION_MODEL,
    Experiment.CONFIGURATION_STEPS,
    Experiment.CONFIGURATION_GAMMA,
    Experiment.CONFIGURATION_SIGMA_A,
    Experiment.CONFIGURATION_P,
    Experiment.CONFIGURATION_RUNS,
    Experiment.CONFIGURATION_INITIAL_COIN,
    Experiment.CONFIGURATION_MASTER_SEED,
    Experiment.CONFIGURATION_OUTPUT_DIR,
    Experiment.CONFIGURATION_WORKERS,
)
# keys every model reads
COMMON_KEYS = (
    Experiment.CONFIGURATION_MODEL,
    Experiment.CONFIGURATION_STEPS,
    Experiment.CONFIGURATION_INITIAL_COIN,
    Experiment.CONFIGURATION_MASTER_SEED,
    Experiment.CONFIGURATION_OUTPUT_DIR,
)


def load_document(text: str) -> dict:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ConfigurationError(f'Malformed config document: {e}')

    if data is None:
        data = dict()
    if not isinstance(data, dict):
        raise ConfigurationError('Config document must be a key-value mapping.')

    for key, value in data.items():
        if not isinstance(key, str):
            raise ConfigurationError(f'Config keys must be strings, got {key!r}.')
        if isinstance(value, dict):
            raise ConfigurationError(f'Nested values are not supported (key "{key}").')
        if isinstance(value, list) and key != Experiment.CONFIGURATION_INITIAL_COIN:
            raise ConfigurationError(f'Lists are only allowed for "initial_coin" (key "{key}").')
    return data


def parse_override(item: str) -> dict:
    """``key=value`` as given on the command line; the value is read as YAML."""
    key, sep, value = item.partition('=')
    key = key.strip()
    if sep == '' or key == '':
        raise ConfigurationError(f'Override must look like key=value, got "{item}".')
    try:
        return {key: yaml.safe_load(value)}
    except yaml.YAMLError as e:
        raise ConfigurationError(f'Malformed value for "{key}": {e}')


def parse_config(text: str, overrides: Optional[dict] = None) -> ExperimentConfig:
    data = load_document(text)
    if overrides is not None:
        data = merge_dicts(data, overrides)

    unknown = sorted(set(data) - set(KEYS))
    if len(unknown) > 0:
        raise ConfigurationError(f'Unknown config key(s): {", ".join(unknown)}.')

    model = data.get(Experiment.CONFIGURATION_MODEL)
    if model is None:
        raise ConfigurationError('Missing required key "model".')
    if not isinstance(model, str):
        raise ConfigurationError(f'"model" must be a string, got {model!r}.')
    cls = get_experiment_class(model)

    for key in cls.REQUIRED_PARAMETERS:
        if data.get(key) is None:
            raise ConfigurationError(f'Model "{model}" requires key "{key}".')

    ignored = sorted(
        key for key in data
        if key not in COMMON_KEYS and key not in cls.PARAMETERS
    )
    if len(ignored) > 0:
        logger.warning(f'Model "{model}" ignores config key(s): {", ".join(ignored)}.')

    coin_label, coin = _initial_coin(
        data.get(Experiment.CONFIGURATION_INITIAL_COIN, Experiment.SETTINGS_DEFAULT_INITIAL_COIN)
    )
    output_dir = data.get(Experiment.CONFIGURATION_OUTPUT_DIR)
    if output_dir is None:
        output_dir = default_output_dir(model)

    return ExperimentConfig(
        model=model,
        steps=_integer(data, Experiment.CONFIGURATION_STEPS, Experiment.SETTINGS_DEFAULT_STEPS, 1),
        gamma=_probability(data, Experiment.CONFIGURATION_GAMMA),
        sigma_a=_non_negative(data, Experiment.CONFIGURATION_SIGMA_A),
        p=_probability(data, Experiment.CONFIGURATION_P),
        runs=_integer(data, Experiment.CONFIGURATION_RUNS, cls.SETTINGS_DEFAULT_RUNS, 1),
        initial_coin=coin,
        initial_coin_label=coin_label,
        master_seed=_integer(
            data,
            Experiment.CONFIGURATION_MASTER_SEED,
            Experiment.SETTINGS_DEFAULT_MASTER_SEED,
            0,
        ),
        output_dir=str(output_dir),
        workers=_integer(data, Experiment.CONFIGURATION_WORKERS, Experiment.SETTINGS_DEFAULT_WORKERS, 1),
    )


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _integer(data: dict, key: str, default, minimum: int):
    value = data.get(key)
    if value is None:
        return default
    if not isinstance(value, int) or isinstance(value, bool):
        raise ConfigurationError(f'"{key}" must be an integer, got {value!r}.')
    if value < minimum:
        raise ConfigurationError(f'"{key}" must be at least {minimum}, got {value}.')
    return value


def _real(data: dict, key: str) -> Optional[float]:
    value = data.get(key)
    if value is None:
        return None
    if isinstance(value, str):
        # PyYAML reads exponent forms without a dot ("1e-3") as strings
        try:
            value = float(value)
        except ValueError:
            pass
    if not _is_number(value) or not np.isfinite(value):
        raise ConfigurationError(f'"{key}" must be a finite number, got {value!r}.')
    return float(value)


def _probability(data: dict, key: str) -> Optional[float]:
    value = _real(data, key)
    if value is not None and not (0.0 <= value <= 1.0):
        raise ConfigurationError(f'"{key}" must lie in [0, 1], got {value}.')
    return value


def _non_negative(data: dict, key: str) -> Optional[float]:
    value = _real(data, key)
    if value is not None and value < 0.0:
        raise ConfigurationError(f'"{key}" must be non-negative, got {value}.')
    return value


def _initial_coin(value):
    if isinstance(value, str):
        if value not in INITIAL_COINS:
            raise ConfigurationError(
                f'"initial_coin" must be one of {", ".join(INITIAL_COINS)} or a list'
                f' of 3 complex amplitudes, got "{value}".'
            )
        return value, INITIAL_COINS[value].copy()

    if not isinstance(value, list) or len(value) != 3:
        raise ConfigurationError(
            f'"initial_coin" must name a preset or list 3 amplitudes, got {value!r}.'
        )
    try:
        # complex() reads both numbers and strings such as "0.5+0.5j"
        coin = np.array([complex(str(v).replace(' ', '')) for v in value], dtype=np.complex128)
    except ValueError as e:
        raise ConfigurationError(f'"initial_coin" holds a malformed amplitude: {e}')

    norm = float(np.linalg.norm(coin))
    if not np.isfinite(norm) or abs(norm - 1.0) > CUSTOM_COIN_NORM_TOLERANCE:
        raise ConfigurationError(f'"initial_coin" is not normalised (norm {norm:.9g}).')
    return CUSTOM_COIN_LABEL, coin / norm
