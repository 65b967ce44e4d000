import os
import csv
import json
import time
import logging

from typing import List, Optional

import numpy as np

from .. import experiments
from ..analysis import (
    AnalysisError,
    gaussian_comparator,
    interquartile_range,
    moments,
    tv_distance,
)
from ..types import (
    CapacityError,
    ConfigurationError,
    ExperimentConfig,
    GcpVector,
    InterferenceTerms,
    RunReport,
    SigmaSeries,
)
from ..utils import format_float, get_class, get_qutritwalk_version


logger = logging.getLogger(__name__)


class Experiment():
    CONFIGURATION_MODEL = 'model'
    CONFIGURATION_STEPS = 'steps'
    CONFIGURATION_GAMMA = 'gamma'
    CONFIGURATION_SIGMA_A = 'sigma_a'
    CONFIGURATION_P = 'p'
    CONFIGURATION_RUNS = 'runs'
    CONFIGURATION_INITIAL_COIN = 'initial_coin'
    CONFIGURATION_MASTER_SEED = 'master_seed'
    CONFIGURATION_OUTPUT_DIR = 'output_dir'
    CONFIGURATION_WORKERS = 'workers'

    SETTINGS_DEFAULT_STEPS = 100
    SETTINGS_DEFAULT_INITIAL_COIN = 'localized'
    SETTINGS_DEFAULT_MASTER_SEED = 0
    SETTINGS_DEFAULT_WORKERS = 1

    # model-specific parameter keys that must be present in the config
    REQUIRED_PARAMETERS = ()
    # parameter keys the model reads, required or not
    PARAMETERS = ()
    SETTINGS_DEFAULT_RUNS = None
    # largest step count the model can hold in memory, None for unbounded
    MAX_STEPS = None

    DISTRIBUTION_FILE = 'distribution.csv'
    SIGMA_FILE = 'sigma.csv'
    GCP_FILE = 'gcp.csv'
    REPORT_FILE = 'report.json'

    def __init__(self, config: ExperimentConfig, name: str):
        self.name = name
        self.config = config

    def estimated_bytes(self) -> Optional[int]:
        """Memory held by the model state, None when it is small."""
        return None

    def _memory_note(self) -> str:
        size = self.estimated_bytes()
        if size is None:
            return ''
        return f' (state needs about {size / 1e9:.3g} GB)'

    def check_capacity(self):
        if self.MAX_STEPS is not None and self.config.steps > self.MAX_STEPS:
            raise CapacityError(
                f'{self.name}: {self.config.steps} steps exceed the capacity of'
                f' {self.MAX_STEPS} steps for this model{self._memory_note()}.'
            )

    def _run(self) -> RunReport:
        raise NotImplementedError()

    def run(self) -> RunReport:
        self.check_capacity()
        logger.info(
            f'{self.name}: {self.config.steps} steps,'
            f' initial coin {self.config.initial_coin_label},'
            f' seed {self.config.master_seed}{self._memory_note()}'
        )
        start = time.perf_counter()
        report = self._run()
        wall_time = time.perf_counter() - start

        report.metadata.update({
            'config': self.config.to_dict(),
            'model': self.name,
            'seed': self.config.master_seed,
            'wall_time': wall_time,
            'version': get_qutritwalk_version(),
            'summary': self.summary(report),
        })
        logger.info(f'{self.name}: finished in {wall_time:.2f}s')

        if self.config.output_dir is not None:
            self.write_outputs(report, self.config.output_dir)
        return report

    @staticmethod
    def summary(report: RunReport) -> dict:
        dist = report.distribution
        mean, variance = moments(dist)
        try:
            tv = tv_distance(dist, gaussian_comparator(dist))
        except AnalysisError:
            tv = None
        return {
            'total_probability': dist.total(),
            'mean_position': mean,
            'sigma': float(np.sqrt(variance)),
            'origin_probability': dist.at(0),
            'interquartile_range': interquartile_range(dist),
            'tv_to_gaussian': tv,
        }

    @staticmethod
    def build_report(
        dist,
        gcps: List[GcpVector],
        sigma: np.ndarray,
        qs: List[InterferenceTerms],
        metadata: Optional[dict] = None,
    ) -> RunReport:
        return RunReport(
            distribution=dist,
            gcp_series=gcps,
            sigma_series=SigmaSeries(sigma=np.asarray(sigma, dtype=np.float64)),
            q_series=qs,
            metadata=dict() if metadata is None else metadata,
        )

    @classmethod
    def write_outputs(cls, report: RunReport, output_dir: str):
        os.makedirs(output_dir, exist_ok=True)

        dist = report.distribution
        cls._write_csv(
            os.path.join(output_dir, cls.DISTRIBUTION_FILE),
            ['n', 'probability'],
            (
                [str(n), format_float(prob)]
                for n, prob in zip(dist.sites, dist.probs)
            ),
        )
        cls._write_csv(
            os.path.join(output_dir, cls.SIGMA_FILE),
            ['t', 'sigma'],
            (
                [str(t), format_float(sigma)]
                for t, sigma in enumerate(report.sigma_series.sigma)
            ),
        )
        cls._write_csv(
            os.path.join(output_dir, cls.GCP_FILE),
            ['t', 'P_L', 'P_S', 'P_R', 'Re_Q1', 'Re_Q2', 'Re_Q3'],
            (
                [str(t)]
                + [format_float(v) for v in g.as_array()]
                + [format_float(v) for v in q.real_parts]
                for t, (g, q) in enumerate(zip(report.gcp_series, report.q_series))
            ),
        )
        with open(os.path.join(output_dir, cls.REPORT_FILE), 'w', encoding='utf-8') as f:
            json.dump(report.metadata, f, indent=2, sort_keys=True, default=_json_default)
            f.write('\n')
        logger.info(f'Outputs written to {output_dir}')

    @staticmethod
    def _write_csv(path, header, rows):
        with open(path, 'w', encoding='utf-8', newline='') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(header)
            writer.writerows(rows)


def _json_default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f'{type(obj).__name__} is not JSON serializable')


MODELS = (
    'coherent',
    'phase_damping',
    'amplitude_damping',
    'unitary_noise',
    'broken_links',
)


def get_experiment_class(model: str):
    if model not in MODELS:
        raise ConfigurationError(
            f'Unknown model "{model}". Supported: {", ".join(MODELS)}.'
        )
    try:
        return get_class(
            '{}.{}'.format(experiments.__name__, model),
            Experiment,
        )
    except ImportError as e:
        raise ConfigurationError(f'Unknown model "{model}": {e}')
