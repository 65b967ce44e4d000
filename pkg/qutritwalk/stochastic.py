"""
Trajectory-based decoherence: random coin rotations and randomly broken links,
averaged over seeded Monte Carlo runs.
"""
import logging

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Tuple, Union

import numpy as np
from sortedcontainers import SortedSet

from .analysis import sigma_of
from .coinspace import (
    CoinMatrix,
    NoiseGenerator,
    grover_coin,
    sample_noise_rotation,
)
from .types import (
    Chirality,
    ConfigurationError,
    GcpVector,
    InterferenceTerms,
    PositionDistribution,
    RunReport,
    SigmaSeries,
)
from .walk import (
    SpinorState,
    apply_coin,
    check_light_cone,
    gcp,
    initial_state,
    interference_terms,
    position_distribution,
    shift,
    step_pure,
)


logger = logging.getLogger(__name__)


NORM_DRIFT_TOLERANCE = 1e-10


class RngStream():
    """
    Deterministic random stream ``stream_id`` derived from ``seed``. Streams
    are children of one SeedSequence, so run ``k`` draws the same numbers no
    matter which process runs it or in what order.
    """

    def __init__(self, seed: int, stream_id: int = 0):
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        self.reset()

    def reset(self):
        sequence = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id,))
        self._generator = np.random.Generator(np.random.PCG64(sequence))

    def normal(self, scale: float, size: int) -> np.ndarray:
        return self._generator.normal(0.0, scale, size)

    def random(self, size: int) -> np.ndarray:
        return self._generator.random(size)

    def __repr__(self):
        return f'RngStream(seed={self.seed}, stream_id={self.stream_id})'


@dataclass
class LinkConfig():
    """Broken edges; edge ``e_n`` joins sites ``n`` and ``n + 1``."""
    broken: SortedSet = field(default_factory=SortedSet)

    def edge_offsets(self, t_max: int) -> np.ndarray:
        edges = np.fromiter(self.broken, dtype=np.int64, count=len(self.broken))
        if len(edges) > 0 and (edges[0] < -t_max or edges[-1] > t_max - 1):
            raise ValueError(
                f'Broken edges {edges[0]}..{edges[-1]} fall outside [{-t_max}, {t_max - 1}].'
            )
        return edges + t_max

    def __len__(self):
        return len(self.broken)


def sample_links(p: float, active_range: Tuple[int, int], rng: RngStream) -> LinkConfig:
    """
    Breaks every edge touching a site in ``active_range`` (inclusive)
    independently with probability ``p``.
    """
    if not (0.0 <= p <= 1.0):
        raise ConfigurationError(f'p must lie in [0, 1], got {p}.')
    lo, hi = active_range
    edges = np.arange(lo - 1, hi + 1)
    broken = edges[rng.random(len(edges)) < p]
    return LinkConfig(broken=SortedSet(broken.tolist()))


def step_broken(state: SpinorState, links: LinkConfig, coin: Optional[CoinMatrix] = None) -> SpinorState:
    """
    Coin+shift step where flux that would cross a broken edge is reflected
    into the opposite chirality of the site it was leaving.
    """
    check_light_cone(state.t, state.t_max)
    if coin is None:
        coin = grover_coin()

    tossed = apply_coin(state.amplitudes, coin)
    amplitudes = shift(tossed)
    offsets = links.edge_offsets(state.t_max)
    if len(offsets) > 0:
        # left site of each broken edge keeps its right-moving part as L
        amplitudes[offsets, Chirality.L] = tossed[offsets, Chirality.R]
        # right site keeps its left-moving part as R
        amplitudes[offsets + 1, Chirality.R] = tossed[offsets + 1, Chirality.L]
    return SpinorState(amplitudes=amplitudes, t=state.t + 1, t_max=state.t_max)


def step_noisy(state: SpinorState, coin: CoinMatrix, gen: NoiseGenerator, rng: RngStream) -> SpinorState:
    rotation = sample_noise_rotation(gen, rng)
    if np.any(gen.alphas):
        coin = coin @ rotation
    return step_pure(state, coin)


@dataclass(frozen=True)
class UnitaryNoise():
    sigma_a: float


@dataclass(frozen=True)
class BrokenLinks():
    p: float


NoiseModel = Union[UnitaryNoise, BrokenLinks]


@dataclass
class McConfig():
    runs: int
    steps: int
    model: NoiseModel
    initial_coin: np.ndarray
    master_seed: int = 0
    workers: int = 1
    coin: np.ndarray = field(default_factory=grover_coin)

    def __post_init__(self):
        if self.runs < 1:
            raise ConfigurationError(f'runs must be at least 1, got {self.runs}.')
        if self.steps < 1:
            raise ConfigurationError(f'steps must be at least 1, got {self.steps}.')
        if self.workers < 1:
            raise ConfigurationError(f'workers must be at least 1, got {self.workers}.')
        if isinstance(self.model, BrokenLinks):
            if not (0.0 <= self.model.p <= 1.0):
                raise ConfigurationError(f'p must lie in [0, 1], got {self.model.p}.')
        elif isinstance(self.model, UnitaryNoise):
            if self.model.sigma_a < 0:
                raise ConfigurationError(f'sigma_a must be non-negative, got {self.model.sigma_a}.')
        else:
            raise ConfigurationError(f'Unsupported noise model: {self.model!r}.')


@dataclass
class TrajectoryResult():
    run_index: int
    distribution: PositionDistribution
    sigma: np.ndarray
    gcp: np.ndarray
    q: np.ndarray
    max_norm_drift: float


def run_trajectory(cfg: McConfig, run_index: int) -> TrajectoryResult:
    rng = RngStream(cfg.master_seed, run_index)
    state = initial_state(cfg.initial_coin, cfg.steps + 1)
    gen = NoiseGenerator(cfg.model.sigma_a) if isinstance(cfg.model, UnitaryNoise) else None

    sigma = np.zeros(cfg.steps + 1)
    gcps = np.zeros((cfg.steps + 1, 3))
    qs = np.zeros((cfg.steps + 1, 3), dtype=np.complex128)
    max_drift = 0.0

    def record(state):
        nonlocal max_drift
        dist = position_distribution(state)
        sigma[state.t] = sigma_of(dist)
        gcps[state.t] = gcp(state).as_array()
        qs[state.t] = interference_terms(state).as_array()
        max_drift = max(max_drift, abs(dist.total() - 1.0))
        return dist

    dist = record(state)
    for _ in range(cfg.steps):
        if gen is None:
            links = sample_links(cfg.model.p, (-state.t, state.t), rng)
            state = step_broken(state, links, cfg.coin)
        else:
            state = step_noisy(state, cfg.coin, gen, rng)
        dist = record(state)

    if max_drift > NORM_DRIFT_TOLERANCE:
        logger.warning(f'Run {run_index}: norm drifted by {max_drift:.3g}.')

    return TrajectoryResult(
        run_index=run_index,
        distribution=dist,
        sigma=sigma,
        gcp=gcps,
        q=qs,
        max_norm_drift=max_drift,
    )


def _iterate_trajectories(cfg: McConfig, indices):
    if cfg.workers == 1 or len(indices) == 1:
        for idx in indices:
            yield run_trajectory(cfg, idx)
        return

    with ProcessPoolExecutor(max_workers=cfg.workers) as executor:
        # map keeps submission order, so the reduction below stays in run order
        yield from executor.map(run_trajectory, [cfg] * len(indices), indices, chunksize=8)


def monte_carlo(cfg: McConfig, run_indices: Optional[Iterable[int]] = None) -> RunReport:
    indices = list(range(cfg.runs) if run_indices is None else run_indices)
    if len(indices) == 0:
        raise ConfigurationError('At least one run is required.')

    t_max = cfg.steps + 1
    probs = np.zeros(2 * t_max + 1)
    sigma = np.zeros(cfg.steps + 1)
    gcps = np.zeros((cfg.steps + 1, 3))
    qs = np.zeros((cfg.steps + 1, 3), dtype=np.complex128)
    max_drift = 0.0

    log_every = max(1, len(indices) // 10)
    for done, result in enumerate(_iterate_trajectories(cfg, indices), start=1):
        probs += result.distribution.probs
        sigma += result.sigma
        gcps += result.gcp
        qs += result.q
        max_drift = max(max_drift, result.max_norm_drift)
        if done % log_every == 0:
            logger.debug(f'{done}/{len(indices)} trajectories done')

    runs = len(indices)
    return RunReport(
        distribution=PositionDistribution(probs=probs / runs, t=cfg.steps, t_max=t_max),
        gcp_series=[GcpVector.from_array(row) for row in gcps / runs],
        sigma_series=SigmaSeries(sigma=sigma / runs),
        q_series=[InterferenceTerms.from_array(row) for row in qs / runs],
        metadata={
            'runs': runs,
            'first_run_index': indices[0],
            'master_seed': cfg.master_seed,
            'max_norm_drift': max_drift,
        },
    )
