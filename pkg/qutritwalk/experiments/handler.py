import os
import logging

from typing import List, Optional

from .experiment import Experiment, get_experiment_class
from ..types import CapacityError, ConfigurationError, ExperimentConfig, RunReport


logger = logging.getLogger(__name__)


class ExperimentHandler():

    def __init__(self):
        # (config index, exception) for every config of the last sweep that failed
        self.failures = list()

    @staticmethod
    def get_experiment(cfg: ExperimentConfig) -> Experiment:
        cls = get_experiment_class(cfg.model)
        return cls(cfg, cfg.model)

    def run_experiment(self, cfg: ExperimentConfig) -> RunReport:
        return self.get_experiment(cfg).run()

    def sweep(self, cfgs: List[ExperimentConfig]) -> List[Optional[RunReport]]:
        """
        Runs every config in turn. A failing config is logged and yields None
        in its slot; the rest of the sweep still runs.
        """
        self.failures = list()
        self._check_output_dirs(cfgs)

        reports = list()
        for idx, cfg in enumerate(cfgs):
            try:
                reports.append(self.run_experiment(cfg))
            except (ConfigurationError, CapacityError) as e:
                logger.error(f'Config {idx} ({cfg.model}): {e}')
                self.failures.append((idx, e))
                reports.append(None)
            except Exception as e:
                logger.exception(str(e))
                self.failures.append((idx, e))
                reports.append(None)

        if len(self.failures) > 0:
            logger.warning(f'{len(self.failures)} of {len(cfgs)} experiments failed.')
        return reports

    @staticmethod
    def _check_output_dirs(cfgs: List[ExperimentConfig]):
        seen = dict()
        for idx, cfg in enumerate(cfgs):
            if cfg.output_dir is None:
                continue
            path = os.path.abspath(cfg.output_dir)
            if path in seen:
                logger.warning(
                    f'Configs {seen[path]} and {idx} write to the same directory'
                    f' {cfg.output_dir}; the later run overwrites the earlier one.'
                )
            else:
                seen[path] = idx


HANDLER = ExperimentHandler()


def run_experiment(cfg: ExperimentConfig) -> RunReport:
    return HANDLER.run_experiment(cfg)


def sweep(cfgs: List[ExperimentConfig]) -> List[Optional[RunReport]]:
    return HANDLER.sweep(cfgs)
