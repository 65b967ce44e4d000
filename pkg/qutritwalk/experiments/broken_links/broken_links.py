from .. import trajectory
from ...stochastic import BrokenLinks


class BrokenLinksExperiment(trajectory.TrajectoryExperiment):
    REQUIRED_PARAMETERS = (trajectory.Experiment.CONFIGURATION_P,)
    PARAMETERS = REQUIRED_PARAMETERS + (
        trajectory.Experiment.CONFIGURATION_RUNS,
        trajectory.Experiment.CONFIGURATION_WORKERS,
    )
    SETTINGS_DEFAULT_RUNS = 1000

    def noise_model(self) -> BrokenLinks:
        return BrokenLinks(p=self.config.p)
