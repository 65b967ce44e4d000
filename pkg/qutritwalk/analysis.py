import math
import logging

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
from scipy import stats

from .types import GcpVector, PositionDistribution, SigmaSeries, TransitionEstimate


logger = logging.getLogger(__name__)


EARLY_WINDOW_START = 5
EARLY_WINDOW_MAX_END = 20
EARLY_WINDOW_MIN_LENGTH = 5
MIN_SERIES_LENGTH = 20


class AnalysisError(Exception):
    pass


@dataclass
class MarkovGcp():
    matrix: np.ndarray = field(default_factory=lambda: np.array(
        [[1.0, 4.0, 4.0],
         [4.0, 1.0, 4.0],
         [4.0, 4.0, 1.0]],
    ) / 9.0)

    def step(self, g: GcpVector) -> GcpVector:
        return GcpVector.from_array(self.matrix @ g.as_array())

    def is_stochastic(self, atol: float = 1e-15) -> bool:
        return (
            np.allclose(self.matrix.sum(axis=0), 1.0, rtol=0.0, atol=atol)
            and np.allclose(self.matrix, self.matrix.T, rtol=0.0, atol=atol)
        )


MARKOV_GCP = MarkovGcp()


def markov_gcp_step(g: GcpVector) -> GcpVector:
    return MARKOV_GCP.step(g)


def moments(dist: PositionDistribution) -> Tuple[float, float]:
    sites = dist.sites
    mean = float(np.dot(sites, dist.probs))
    second = float(np.dot(sites.astype(np.float64) ** 2, dist.probs))
    return mean, max(second - mean * mean, 0.0)


def mean_position(dist: PositionDistribution) -> float:
    return moments(dist)[0]


def sigma_of(dist: PositionDistribution) -> float:
    return math.sqrt(moments(dist)[1])


def gaussian_comparator(dist: PositionDistribution) -> PositionDistribution:
    """
    Discrete Gaussian on the same sites with the input's mean and variance.
    """
    mean, variance = moments(dist)
    if variance <= 0.0:
        raise AnalysisError('Cannot build a Gaussian comparator for a zero-variance distribution.')

    density = stats.norm.pdf(dist.sites, loc=mean, scale=math.sqrt(variance))
    total = density.sum()
    if total <= 0.0:
        raise AnalysisError('Gaussian comparator vanishes on the lattice.')
    return PositionDistribution(probs=density / total, t=dist.t, t_max=dist.t_max)


def tv_distance(p: PositionDistribution, q: PositionDistribution) -> float:
    if p.t_max != q.t_max or len(p.probs) != len(q.probs):
        raise AnalysisError(
            f'Distributions cover different site ranges (±{p.t_max} vs ±{q.t_max}).'
        )
    return 0.5 * float(np.sum(np.abs(p.probs - q.probs)))


def origin_excess(dist: PositionDistribution) -> float:
    """P(0) relative to the Gaussian comparator's value at the origin."""
    return dist.at(0) / gaussian_comparator(dist).at(0)


def quantile(dist: PositionDistribution, q: float) -> int:
    """Smallest site whose cumulative probability reaches q."""
    if not (0.0 < q < 1.0):
        raise AnalysisError(f'Quantile must lie in (0, 1), got {q}.')
    cdf = np.cumsum(dist.probs) / dist.total()
    idx = min(int(np.searchsorted(cdf, q)), len(cdf) - 1)
    return int(dist.sites[idx])


def interquartile_range(dist: PositionDistribution) -> int:
    return quantile(dist, 0.75) - quantile(dist, 0.25)


def linear_fit(series: SigmaSeries, t_from: int, t_to: int) -> Tuple[float, float, float]:
    """Least-squares line through σ(t), t in [t_from, t_to]: (slope, intercept, R²)."""
    times = series.times[t_from:t_to + 1]
    if len(times) < 2:
        raise AnalysisError(f'Fit window [{t_from}, {t_to}] holds fewer than two points.')
    fit = stats.linregress(times, series.sigma[t_from:t_to + 1])
    return float(fit.slope), float(fit.intercept), float(fit.rvalue ** 2)


def spreading_exponent(series: SigmaSeries, t_from: int, t_to: int) -> float:
    """
    Slope of log σ against log t; 1 for ballistic, 1/2 for diffusive spreading.
    """
    t_from = max(t_from, 1)
    times = series.times[t_from:t_to + 1]
    sigma = series.sigma[t_from:t_to + 1]
    if len(times) < 2 or np.any(sigma <= 0.0):
        raise AnalysisError('Spreading exponent needs at least two points with σ > 0.')
    return float(stats.linregress(np.log(times), np.log(sigma)).slope)


def early_window(series: SigmaSeries, p: float) -> Tuple[int, int]:
    t_to = min(EARLY_WINDOW_MAX_END, math.ceil(0.5 / p), len(series) // 4)
    t_to = max(t_to, EARLY_WINDOW_START + EARLY_WINDOW_MIN_LENGTH)
    return EARLY_WINDOW_START, min(t_to, len(series) - 1)


def estimate_transition(series: SigmaSeries, p: float) -> TransitionEstimate:
    """
    Ballistic rate from the early part of σ(t) and the crossover time
    t_c = 1 / (p · alpha_hat).
    """
    if len(series) < MIN_SERIES_LENGTH:
        raise AnalysisError(
            f'Need at least {MIN_SERIES_LENGTH} points of σ(t), got {len(series)}.'
        )
    if p <= 0.0:
        raise AnalysisError(f'Transition time needs p > 0, got {p}.')

    t_from, t_to = early_window(series, p)
    slope, _, _ = linear_fit(series, t_from, t_to)
    if slope <= 1e-12:
        raise AnalysisError(f'σ(t) does not grow over t in [{t_from}, {t_to}].')

    logger.debug(f'alpha_hat={slope:.6g} from window [{t_from}, {t_to}]')
    return TransitionEstimate(t_c=1.0 / (p * slope), alpha_hat=slope)
