import logging

from .experiment import Experiment
from ..stochastic import McConfig, monte_carlo
from ..types import RunReport


logger = logging.getLogger(__name__)


class TrajectoryExperiment(Experiment):
    """Seeded Monte Carlo average over independent stochastic trajectories."""

    def noise_model(self):
        raise NotImplementedError()

    @property
    def runs(self) -> int:
        if self.config.runs is None:
            return self.SETTINGS_DEFAULT_RUNS
        return self.config.runs

    def _run(self) -> RunReport:
        cfg = McConfig(
            runs=self.runs,
            steps=self.config.steps,
            model=self.noise_model(),
            initial_coin=self.config.initial_coin,
            master_seed=self.config.master_seed,
            workers=self.config.workers,
        )
        logger.info(f'{self.name}: averaging {cfg.runs} trajectories on {cfg.workers} worker(s)')
        return monte_carlo(cfg)
