import pytest
import numpy as np

from qutritwalk.analysis import interquartile_range
from qutritwalk.experiments.coherent import CoherentExperiment
from qutritwalk.experiments.unitary_noise import UnitaryNoiseExperiment
from qutritwalk.types import ExperimentConfig
from qutritwalk.walk import LOCALIZED_COIN, NONLOCALIZED_COIN


COINS = {
    'localized': LOCALIZED_COIN,
    'nonlocalized': NONLOCALIZED_COIN,
}


def _config(model, label, **kwargs):
    return ExperimentConfig(
        model=model,
        initial_coin=COINS[label],
        initial_coin_label=label,
        **kwargs,
    )


def test_default_runs(experiment_config):
    experiment = UnitaryNoiseExperiment(
        experiment_config('unitary_noise', sigma_a=0.1),
        'unitary_noise',
    )
    assert experiment.runs == 400


def test_zero_noise_matches_coherent():
    noisy = UnitaryNoiseExperiment(
        _config('unitary_noise', 'localized', sigma_a=0.0, steps=30, runs=2),
        'unitary_noise',
    ).run()
    coherent = CoherentExperiment(_config('coherent', 'localized', steps=30), 'coherent').run()
    assert np.allclose(
        noisy.distribution.probs,
        coherent.distribution.probs,
        rtol=0.0,
        atol=1e-12,
    )
    assert noisy.metadata['runs'] == 2


@pytest.mark.parametrize('label', ['localized', 'nonlocalized'])
def test_noise_concentrates_distribution(label):
    noisy = UnitaryNoiseExperiment(
        _config('unitary_noise', label, sigma_a=0.3, runs=200, workers=2),
        'unitary_noise',
    ).run()
    coherent = CoherentExperiment(_config('coherent', label), 'coherent').run()

    assert abs(noisy.distribution.total() - 1.0) < 1e-9
    assert noisy.metadata['max_norm_drift'] < 1e-10
    assert interquartile_range(noisy.distribution) < interquartile_range(coherent.distribution)
    assert noisy.sigma_series.sigma[-1] < coherent.sigma_series.sigma[-1]


def test_seed_is_reproducible(experiment_config, tmp_path):
    def run(name, **kwargs):
        UnitaryNoiseExperiment(
            experiment_config(
                'unitary_noise',
                sigma_a=0.2,
                steps=15,
                runs=6,
                master_seed=11,
                output_dir=str(tmp_path / name),
                **kwargs,
            ),
            'unitary_noise',
        ).run()
        return (tmp_path / name / 'distribution.csv').read_bytes()

    assert run('serial') == run('parallel', workers=3)
