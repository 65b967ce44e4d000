import pytest
import numpy as np

from qutritwalk.analysis import (
    estimate_transition,
    linear_fit,
    origin_excess,
    spreading_exponent,
)
from qutritwalk.experiments.broken_links import BrokenLinksExperiment
from qutritwalk.experiments.coherent import CoherentExperiment
from qutritwalk.types import ExperimentConfig, SigmaSeries
from qutritwalk.walk import LOCALIZED_COIN, NONLOCALIZED_COIN


def _config(model, coin=LOCALIZED_COIN, label='localized', **kwargs):
    return ExperimentConfig(
        model=model,
        initial_coin=coin,
        initial_coin_label=label,
        **kwargs,
    )


def _broken(**kwargs):
    return BrokenLinksExperiment(_config('broken_links', **kwargs), 'broken_links').run()


def _coherent(**kwargs):
    return CoherentExperiment(_config('coherent', **kwargs), 'coherent').run()


@pytest.fixture(scope='module')
def localized_ensemble():
    return _broken(p=0.1, steps=200, runs=1000, workers=4)


@pytest.fixture(scope='module')
def nonlocalized_ensemble():
    return _broken(
        coin=NONLOCALIZED_COIN,
        label='nonlocalized',
        p=0.1,
        steps=200,
        runs=1000,
        workers=4,
    )


@pytest.mark.parametrize('coin', [LOCALIZED_COIN, NONLOCALIZED_COIN])
def test_intact_links_match_coherent(coin):
    broken = _broken(coin=coin, p=0.0, steps=60, runs=3)
    coherent = _coherent(coin=coin, steps=60)
    assert np.allclose(
        broken.distribution.probs,
        coherent.distribution.probs,
        rtol=0.0,
        atol=1e-12,
    )
    assert np.allclose(
        broken.sigma_series.sigma,
        coherent.sigma_series.sigma,
        rtol=0.0,
        atol=1e-10,
    )


def test_all_links_broken_stays_at_origin():
    report = _broken(p=1.0, steps=25, runs=4)
    assert abs(report.distribution.at(0) - 1.0) < 1e-12
    assert np.all(np.abs(report.sigma_series.sigma) < 1e-6)


def test_flux_is_conserved():
    report = _broken(p=0.5, steps=200, runs=10)
    assert report.metadata['max_norm_drift'] < 1e-10
    assert abs(report.distribution.total() - 1.0) < 1e-9


def test_rare_breaks_stay_quantum():
    broken = _broken(p=0.01, steps=50, runs=1000, workers=4).sigma_series.sigma
    coherent = _coherent(steps=50).sigma_series.sigma
    deviation = np.abs(broken[1:] - coherent[1:]) / coherent[1:]
    # deviation index t - 1 belongs to step t
    assert np.all(deviation[:8] <= 0.05)
    assert broken[50] < coherent[50]

    series = SigmaSeries(broken)
    _, _, r_squared = linear_fit(series, 20, 50)
    assert r_squared >= 0.99
    assert spreading_exponent(series, 20, 50) > 0.75


def test_transition_to_diffusion(localized_ensemble):
    series = localized_ensemble.sigma_series
    estimate = estimate_transition(series, 0.1)

    assert series.sigma[200] <= 0.9 * estimate.alpha_hat * 200
    assert series.sigma[200] / series.sigma[50] < (200 / 50) * 0.9
    assert estimate.t_c < 200


def test_localization_survives(localized_ensemble, nonlocalized_ensemble):
    assert origin_excess(localized_ensemble.distribution) >= 2.0
    assert origin_excess(nonlocalized_ensemble.distribution) <= 1.2


def test_ensemble_metadata(localized_ensemble):
    assert localized_ensemble.metadata['runs'] == 1000
    assert localized_ensemble.metadata['max_norm_drift'] < 1e-10
    assert localized_ensemble.metadata['summary']['total_probability'] == pytest.approx(1.0, abs=1e-9)


def test_output_is_byte_identical(tmp_path):
    paths = list()
    for name, workers in (('serial', 1), ('parallel', 2)):
        out = tmp_path / name
        _broken(p=0.2, steps=40, runs=20, master_seed=7, workers=workers, output_dir=str(out))
        paths.append(out)
    for name in ('distribution.csv', 'sigma.csv', 'gcp.csv'):
        assert (paths[0] / name).read_bytes() == (paths[1] / name).read_bytes()
