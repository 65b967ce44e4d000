import pytest

from qutritwalk.config import parse_config
from qutritwalk.recipes import RECIPES, get_recipe
from qutritwalk.types import ConfigurationError


@pytest.mark.parametrize('name,size', [
    ('coherent', 2),
    ('phase_damping_sweep', 12),
    ('amplitude_damping_sweep', 12),
    ('unitary_noise_sweep', 8),
    ('broken_links_distribution', 12),
    ('broken_links_sigma', 8),
])
def test_recipe_members(name, size):
    members = get_recipe(name)
    assert len(members) == size
    assert len({member for member, _ in members}) == size


@pytest.mark.parametrize('name', list(RECIPES))
def test_recipe_members_are_valid_configs(name):
    for member, keys in get_recipe(name):
        cfg = parse_config('', dict(keys))
        assert cfg.model == keys['model']
        assert cfg.initial_coin_label == member.split('/')[0]


def test_member_names():
    names = [member for member, _ in get_recipe('phase_damping_sweep')]
    assert 'localized/gamma_0' in names
    assert 'nonlocalized/gamma_0_5' in names
    names = [member for member, _ in get_recipe('broken_links_distribution')]
    assert 'localized/steps_200/p_0_01' in names


def test_unknown_recipe():
    with pytest.raises(ConfigurationError, match='spiral'):
        get_recipe('spiral')
