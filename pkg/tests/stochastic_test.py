import pytest
import numpy as np

from sortedcontainers import SortedSet

from qutritwalk.analysis import sigma_of
from qutritwalk.coinspace import NoiseGenerator
from qutritwalk.stochastic import (
    BrokenLinks,
    LinkConfig,
    McConfig,
    RngStream,
    UnitaryNoise,
    monte_carlo,
    run_trajectory,
    sample_links,
    step_broken,
    step_noisy,
)
from qutritwalk.types import ConfigurationError, LightConeError
from qutritwalk.walk import (
    LOCALIZED_COIN,
    NONLOCALIZED_COIN,
    SpinorState,
    evolve_pure,
    initial_state,
    position_distribution,
    step_pure,
)


SQRT2 = np.sqrt(2.0)
R1 = np.array([-1.0, 2.0, 2.0]) / 3.0
R2 = np.array([2.0, -1.0, 2.0]) / 3.0
R3 = np.array([2.0, 2.0, -1.0]) / 3.0


def _literal_broken_step(state, links):
    """Site by site transcription of the regular, left-broken, right-broken and both-broken systems."""
    t_max = state.t_max
    out = np.zeros_like(state.amplitudes)

    def v(n):
        if abs(n) > t_max:
            return np.zeros(3, dtype=np.complex128)
        return state.site(n)

    for n in range(-t_max, t_max + 1):
        left_broken = (n - 1) in links.broken
        right_broken = n in links.broken
        i = n + t_max
        if not left_broken and not right_broken:
            out[i] = [R1 @ v(n + 1), R2 @ v(n), R3 @ v(n - 1)]
        elif left_broken and not right_broken:
            out[i] = [R1 @ v(n + 1), R2 @ v(n), R1 @ v(n)]
        elif not left_broken and right_broken:
            out[i] = [R3 @ v(n), R2 @ v(n), R3 @ v(n - 1)]
        else:
            out[i] = [R3 @ v(n), R2 @ v(n), R1 @ v(n)]
    return out


def _random_state(rng, support, t_max, t):
    amplitudes = np.zeros((2 * t_max + 1, 3), dtype=np.complex128)
    inside = slice(t_max - support, t_max + support + 1)
    amplitudes[inside] = rng.normal(size=(2 * support + 1, 3)) + 1j * rng.normal(size=(2 * support + 1, 3))
    amplitudes /= np.sqrt(np.sum(np.abs(amplitudes) ** 2))
    return SpinorState(amplitudes=amplitudes, t=t, t_max=t_max)


def test_rng_stream_reproducible():
    first = RngStream(5, 2)
    second = RngStream(5, 2)
    assert np.array_equal(first.normal(1.0, 10), second.normal(1.0, 10))
    assert np.array_equal(first.random(10), second.random(10))

    draws = first.random(4)
    first.reset()
    first.normal(1.0, 10)
    first.random(10)
    assert np.array_equal(first.random(4), draws)


@pytest.mark.parametrize('other', [(5, 3), (6, 2)])
def test_rng_stream_independent(other):
    assert not np.array_equal(RngStream(5, 2).random(10), RngStream(*other).random(10))


def test_sample_links_limits():
    rng = RngStream(0)
    assert len(sample_links(0.0, (-10, 10), rng)) == 0
    assert list(sample_links(1.0, (-3, 3), rng).broken) == list(range(-4, 4))


def test_sample_links_rejects_p():
    with pytest.raises(ConfigurationError):
        sample_links(1.5, (0, 0), RngStream(0))


def test_sample_links_binomial():
    p = 0.1
    links = sample_links(p, (-50000, 49998), RngStream(11))
    edges = 10 ** 5
    fraction = len(links) / edges
    assert abs(fraction - p) < 4 * np.sqrt(p * (1 - p) / edges)


def test_sample_links_deterministic():
    first = sample_links(0.3, (-20, 20), RngStream(3, 1))
    second = sample_links(0.3, (-20, 20), RngStream(3, 1))
    assert list(first.broken) == list(second.broken)


def test_link_config_range():
    links = LinkConfig(broken=SortedSet([-3, 2]))
    assert list(links.edge_offsets(3)) == [0, 5]
    with pytest.raises(ValueError):
        LinkConfig(broken=SortedSet([3])).edge_offsets(3)
    with pytest.raises(ValueError):
        LinkConfig(broken=SortedSet([-4])).edge_offsets(3)


def test_step_broken_without_links(grover, rng):
    state = _random_state(rng, 5, 12, 5)
    assert np.array_equal(
        step_broken(state, LinkConfig()).amplitudes,
        step_pure(state, grover).amplitudes,
    )


def test_step_broken_isolated_origin(localized_state):
    state = step_broken(localized_state(3), LinkConfig(broken=SortedSet([-1, 0])))
    assert abs(state.site(0)[0] - (2j - 1) / (3 * SQRT2)) < 1e-15
    assert abs(state.site(0)[1] - (2j + 2) / (3 * SQRT2)) < 1e-15
    assert abs(state.site(0)[2] - (2 - 1j) / (3 * SQRT2)) < 1e-15
    dist = position_distribution(state)
    assert abs(dist.at(0) - 1.0) < 1e-15
    assert abs(state.norm() - 1.0) < 1e-15


@pytest.mark.parametrize('coin', [LOCALIZED_COIN, NONLOCALIZED_COIN])
def test_step_broken_all_links(coin):
    state = initial_state(coin, 30)
    for _ in range(30):
        links = LinkConfig(broken=SortedSet(range(-state.t - 1, state.t + 1)))
        state = step_broken(state, links)
    assert abs(position_distribution(state).at(0) - 1.0) < 1e-12


def test_step_broken_matches_recurrence_systems(rng):
    for seed in range(50):
        state = _random_state(rng, 6, 10, 6)
        links = sample_links(0.4, (-6, 6), RngStream(seed))
        exp = _literal_broken_step(state, links)
        assert np.allclose(step_broken(state, links).amplitudes, exp, rtol=0.0, atol=1e-14)


def test_step_broken_unitary(rng):
    for seed in range(1000):
        state = _random_state(rng, 10, 20, 10)
        links = sample_links(0.5, (-10, 10), RngStream(seed))
        assert abs(step_broken(state, links).norm() - state.norm()) < 1e-12


def test_step_broken_light_cone(grover, localized_state):
    state = evolve_pure(localized_state(2), 2, grover)
    with pytest.raises(LightConeError):
        step_broken(state, LinkConfig())


def test_step_noisy_zero_sigma(grover, nonlocalized_state):
    state = evolve_pure(nonlocalized_state(10), 3, grover)
    res = step_noisy(state, grover, NoiseGenerator(0.0), RngStream(1))
    assert np.array_equal(res.amplitudes, step_pure(state, grover).amplitudes)


def test_step_noisy_one_step(grover, localized_state):
    res = step_noisy(localized_state(3), grover, NoiseGenerator(0.8), RngStream(2))
    dist = position_distribution(res)
    assert abs(dist.total() - 1.0) < 1e-12
    assert np.all(dist.probs[np.abs(dist.sites) > 1] == 0.0)


def test_step_noisy_deterministic(grover, localized_state):
    def trajectory():
        state = localized_state(20)
        gen = NoiseGenerator(0.3)
        rng = RngStream(9, 4)
        for _ in range(20):
            state = step_noisy(state, grover, gen, rng)
        return state.amplitudes

    assert np.array_equal(trajectory(), trajectory())


@pytest.mark.parametrize('kwargs', [
    dict(runs=0, steps=10, model=BrokenLinks(0.1)),
    dict(runs=1, steps=0, model=BrokenLinks(0.1)),
    dict(runs=1, steps=10, model=BrokenLinks(1.1)),
    dict(runs=1, steps=10, model=UnitaryNoise(-0.1)),
    dict(runs=1, steps=10, model=BrokenLinks(0.1), workers=0),
    dict(runs=1, steps=10, model=0.1),
])
def test_mc_config_rejects(kwargs):
    with pytest.raises(ConfigurationError):
        McConfig(initial_coin=LOCALIZED_COIN, **kwargs)


@pytest.mark.parametrize('model', [BrokenLinks(0.0), UnitaryNoise(0.0)])
@pytest.mark.parametrize('coin', [LOCALIZED_COIN, NONLOCALIZED_COIN])
def test_trajectory_without_noise_is_coherent(grover, model, coin):
    cfg = McConfig(runs=1, steps=40, model=model, initial_coin=coin)
    result = run_trajectory(cfg, 0)
    exp = evolve_pure(initial_state(coin, 41), 40, grover)
    assert np.array_equal(result.distribution.probs, position_distribution(exp).probs)
    assert result.sigma[0] == 0.0
    assert abs(result.sigma[-1] - sigma_of(position_distribution(exp))) < 1e-12


def test_trajectory_all_links_broken():
    cfg = McConfig(runs=1, steps=50, model=BrokenLinks(1.0), initial_coin=LOCALIZED_COIN)
    result = run_trajectory(cfg, 0)
    assert abs(result.distribution.at(0) - 1.0) < 1e-12
    assert np.all(result.sigma < 1e-6)


def test_trajectory_norm_drift():
    cfg = McConfig(runs=1, steps=200, model=BrokenLinks(0.5), initial_coin=NONLOCALIZED_COIN)
    for run_index in range(3):
        assert run_trajectory(cfg, run_index).max_norm_drift < 1e-10


def test_trajectory_records_series():
    cfg = McConfig(runs=1, steps=15, model=UnitaryNoise(0.2), initial_coin=LOCALIZED_COIN)
    result = run_trajectory(cfg, 3)
    assert result.sigma.shape == (16,)
    assert result.gcp.shape == (16, 3)
    assert result.q.shape == (16, 3)
    assert np.allclose(result.gcp.sum(axis=1), 1.0, rtol=0.0, atol=1e-10)
    assert np.allclose(result.gcp[0], [0.5, 0.0, 0.5], rtol=0.0, atol=1e-15)


def test_monte_carlo_single_run():
    cfg = McConfig(runs=1, steps=30, model=BrokenLinks(0.2), initial_coin=LOCALIZED_COIN, master_seed=4)
    report = monte_carlo(cfg)
    result = run_trajectory(cfg, 0)
    assert np.array_equal(report.distribution.probs, result.distribution.probs)
    assert np.array_equal(report.sigma_series.sigma, result.sigma)
    assert report.metadata['runs'] == 1


@pytest.mark.parametrize('model', [BrokenLinks(0.1), UnitaryNoise(0.3)])
def test_monte_carlo_mean_of_means(model):
    k = 5
    cfg = McConfig(runs=2 * k, steps=25, model=model, initial_coin=NONLOCALIZED_COIN, master_seed=8)
    full = monte_carlo(cfg)
    first = monte_carlo(cfg, range(k))
    second = monte_carlo(cfg, range(k, 2 * k))

    assert second.metadata['first_run_index'] == k
    assert np.allclose(
        full.distribution.probs,
        0.5 * (first.distribution.probs + second.distribution.probs),
        rtol=0.0,
        atol=1e-12,
    )
    assert np.allclose(
        full.sigma_series.sigma,
        0.5 * (first.sigma_series.sigma + second.sigma_series.sigma),
        rtol=0.0,
        atol=1e-12,
    )


def test_monte_carlo_parallel_matches_serial():
    serial = McConfig(runs=12, steps=20, model=BrokenLinks(0.2), initial_coin=LOCALIZED_COIN, master_seed=1)
    parallel = McConfig(runs=12, steps=20, model=BrokenLinks(0.2), initial_coin=LOCALIZED_COIN,
                        master_seed=1, workers=3)
    a = monte_carlo(serial)
    b = monte_carlo(parallel)
    assert np.array_equal(a.distribution.probs, b.distribution.probs)
    assert np.array_equal(a.sigma_series.sigma, b.sigma_series.sigma)


def test_monte_carlo_seed_changes_result():
    a = monte_carlo(McConfig(runs=4, steps=20, model=UnitaryNoise(0.5), initial_coin=LOCALIZED_COIN))
    b = monte_carlo(McConfig(runs=4, steps=20, model=UnitaryNoise(0.5), initial_coin=LOCALIZED_COIN,
                             master_seed=1))
    assert not np.array_equal(a.distribution.probs, b.distribution.probs)


def test_monte_carlo_requires_runs():
    cfg = McConfig(runs=2, steps=5, model=BrokenLinks(0.1), initial_coin=LOCALIZED_COIN)
    with pytest.raises(ConfigurationError):
        monte_carlo(cfg, [])


def test_monte_carlo_normalised():
    cfg = McConfig(runs=20, steps=30, model=UnitaryNoise(0.3), initial_coin=NONLOCALIZED_COIN)
    report = monte_carlo(cfg)
    assert abs(report.distribution.total() - 1.0) < 1e-9
    assert len(report.gcp_series) == 31
    assert len(report.q_series) == 31
    assert report.metadata['max_norm_drift'] < 1e-10
