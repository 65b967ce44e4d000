"""
Named parameter grids. Each recipe expands into a list of members, every
member a set of config keys run into its own output subdirectory.
"""
import logging

from collections import OrderedDict
from typing import Dict, List, Tuple

from .types import ConfigurationError


logger = logging.getLogger(__name__)


INITIAL_COINS = ('localized', 'nonlocalized')
GAMMAS = (0.0, 0.1, 0.3, 0.5, 0.7, 0.9)
SIGMA_AS = (0.0, 0.1, 0.3, 0.5)
LINK_PROBABILITIES = (0.01, 0.05, 0.1)

Member = Tuple[str, Dict]


def _label(value: float) -> str:
    return format(value, 'g').replace('.', '_')


def coherent() -> List[Member]:
    return [
        (coin, {'model': 'coherent', 'steps': 100, 'initial_coin': coin})
        for coin in INITIAL_COINS
    ]


def _gamma_sweep(model: str) -> List[Member]:
    return [
        (
            f'{coin}/gamma_{_label(gamma)}',
            {'model': model, 'steps': 100, 'gamma': gamma, 'initial_coin': coin},
        )
        for coin in INITIAL_COINS
        for gamma in GAMMAS
    ]


def phase_damping_sweep() -> List[Member]:
    return _gamma_sweep('phase_damping')


def amplitude_damping_sweep() -> List[Member]:
    return _gamma_sweep('amplitude_damping')


def unitary_noise_sweep() -> List[Member]:
    return [
        (
            f'{coin}/sigma_a_{_label(sigma_a)}',
            {
                'model': 'unitary_noise',
                'steps': 100,
                'sigma_a': sigma_a,
                'runs': 400,
                'initial_coin': coin,
            },
        )
        for coin in INITIAL_COINS
        for sigma_a in SIGMA_AS
    ]


def broken_links_distribution() -> List[Member]:
    return [
        (
            f'{coin}/steps_{steps}/p_{_label(p)}',
            {
                'model': 'broken_links',
                'steps': steps,
                'p': p,
                'runs': 1000,
                'initial_coin': coin,
            },
        )
        for coin in INITIAL_COINS
        for steps in (50, 200)
        for p in LINK_PROBABILITIES
    ]


def broken_links_sigma() -> List[Member]:
    # sigma.csv of each member traces the ballistic to diffusive crossover
    return [
        (
            f'{coin}/p_{_label(p)}',
            {
                'model': 'broken_links',
                'steps': 200,
                'p': p,
                'runs': 1000,
                'initial_coin': coin,
            },
        )
        for coin in INITIAL_COINS
        for p in (0.0,) + LINK_PROBABILITIES
    ]


RECIPES = OrderedDict([
    ('coherent', coherent),
    ('phase_damping_sweep', phase_damping_sweep),
    ('amplitude_damping_sweep', amplitude_damping_sweep),
    ('unitary_noise_sweep', unitary_noise_sweep),
    ('broken_links_distribution', broken_links_distribution),
    ('broken_links_sigma', broken_links_sigma),
])


def get_recipe(name: str) -> List[Member]:
    if name not in RECIPES:
        raise ConfigurationError(
            f'Unknown recipe "{name}". Available: {", ".join(RECIPES)}.'
        )
    members = RECIPES[name]()
    logger.debug(f'Recipe {name}: {len(members)} members')
    return members
