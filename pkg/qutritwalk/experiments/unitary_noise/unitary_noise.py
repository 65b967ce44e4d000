from .. import trajectory
from ...stochastic import UnitaryNoise


class UnitaryNoiseExperiment(trajectory.TrajectoryExperiment):
    REQUIRED_PARAMETERS = (trajectory.Experiment.CONFIGURATION_SIGMA_A,)
    PARAMETERS = REQUIRED_PARAMETERS + (
        trajectory.Experiment.CONFIGURATION_RUNS,
        trajectory.Experiment.CONFIGURATION_WORKERS,
    )
    SETTINGS_DEFAULT_RUNS = 400

    def noise_model(self) -> UnitaryNoise:
        return UnitaryNoise(sigma_a=self.config.sigma_a)
