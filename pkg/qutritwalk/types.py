import enum

from typing import List, Optional
from dataclasses import dataclass, field

import numpy as np


class ConfigurationError(Exception):
    pass


class CapacityError(Exception):
    pass


class LightConeError(Exception):
    pass


@enum.unique
class Chirality(enum.IntEnum):
    L = 0
    S = 1
    R = 2

    @property
    def displacement(self) -> int:
        return self.value - 1


@dataclass
class GcpVector():
    p_l: float
    p_s: float
    p_r: float

    def as_array(self) -> np.ndarray:
        return np.array([self.p_l, self.p_s, self.p_r], dtype=np.float64)

    @staticmethod
    def from_array(arr) -> 'GcpVector':
        return GcpVector(float(arr[0]), float(arr[1]), float(arr[2]))

    def total(self) -> float:
        return self.p_l + self.p_s + self.p_r


@dataclass
class InterferenceTerms():
    q1: complex
    q2: complex
    q3: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.q1, self.q2, self.q3], dtype=np.complex128)

    @staticmethod
    def from_array(arr) -> 'InterferenceTerms':
        return InterferenceTerms(complex(arr[0]), complex(arr[1]), complex(arr[2]))

    @property
    def real_parts(self) -> np.ndarray:
        return self.as_array().real


@dataclass
class PositionDistribution():
    """
    Probability per lattice site. ``probs[i]`` belongs to site ``i - t_max``.
    """
    probs: np.ndarray
    t: int
    t_max: int

    @property
    def sites(self) -> np.ndarray:
        return np.arange(-self.t_max, self.t_max + 1)

    def at(self, site: int) -> float:
        return float(self.probs[site + self.t_max])

    def total(self) -> float:
        return float(self.probs.sum())


@dataclass
class SigmaSeries():
    sigma: np.ndarray

    def __len__(self):
        return len(self.sigma)

    @property
    def times(self) -> np.ndarray:
        return np.arange(len(self.sigma))


@dataclass
class TransitionEstimate():
    t_c: float
    alpha_hat: float


@dataclass
class RunReport():
    distribution: PositionDistribution
    gcp_series: List[GcpVector]
    sigma_series: SigmaSeries
    q_series: List[InterferenceTerms]
    metadata: dict = field(default_factory=dict)


@dataclass
class ExperimentConfig():
    model: str
    steps: int = 100
    gamma: Optional[float] = None
    sigma_a: Optional[float] = None
    p: Optional[float] = None
    runs: Optional[int] = None
    initial_coin: np.ndarray = field(
        default_factory=lambda: np.array([1j, 0.0, 1.0], dtype=np.complex128) / np.sqrt(2.0)
    )
    initial_coin_label: str = 'localized'
    master_seed: int = 0
    output_dir: Optional[str] = None
    workers: int = 1

    def to_dict(self) -> dict:
        return {
            'model': self.model,
            'steps': self.steps,
            'gamma': self.gamma,
            'sigma_a': self.sigma_a,
            'p': self.p,
            'runs': self.runs,
            'initial_coin': self.initial_coin_label,
            'initial_coin_amplitudes': [
                [float(z.real), float(z.imag)] for z in self.initial_coin
            ],
            'master_seed': self.master_seed,
            'output_dir': self.output_dir,
            'workers': self.workers,
        }
