"""
Pure-state three-state walk on the line.

Site ``n`` in ``[-t_max, t_max]`` lives at array offset ``n + t_max``; the
second axis holds the chirality components (a, b, c) = (L, S, R).
"""
import logging

from dataclasses import dataclass

import numpy as np

from .analysis import MARKOV_GCP
from .coinspace import CoinMatrix, grover_coin, is_grover
from .types import (
    Chirality,
    GcpVector,
    InterferenceTerms,
    LightConeError,
    PositionDistribution,
)


logger = logging.getLogger(__name__)


NORM_TOLERANCE = 1e-9

LOCALIZED_COIN = np.array([1j, 0.0, 1.0], dtype=np.complex128) / np.sqrt(2.0)
NONLOCALIZED_COIN = np.array([1.0, -2.0, 1.0], dtype=np.complex128) / np.sqrt(6.0)

# Columns multiply -Re(Q1)/9, -Re(Q2)/9, -Re(Q3)/9 respectively. Each column
# sums to zero so the total probability is untouched.
INTERFERENCE_GCP_VECTORS = np.array(
    [[4.0, 4.0, -8.0],
     [4.0, -8.0, 4.0],
     [-8.0, 4.0, 4.0]],
).T


@dataclass
class SpinorState():
    amplitudes: np.ndarray
    t: int
    t_max: int

    @property
    def num_sites(self) -> int:
        return 2 * self.t_max + 1

    def site(self, n: int) -> np.ndarray:
        return self.amplitudes[n + self.t_max]

    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def copy(self) -> 'SpinorState':
        return SpinorState(self.amplitudes.copy(), self.t, self.t_max)


def initial_state(coin_amplitudes, t_max: int) -> SpinorState:
    coin_amplitudes = np.asarray(coin_amplitudes, dtype=np.complex128)
    if coin_amplitudes.shape != (3,):
        raise ValueError(f'Coin state must have 3 components, got {coin_amplitudes.shape}.')
    defect = abs(np.linalg.norm(coin_amplitudes) - 1.0)
    if defect > NORM_TOLERANCE:
        raise ValueError(f'Coin state is not normalised (defect {defect:.3g}).')
    if t_max < 1:
        raise ValueError(f'Lattice half-width must be at least 1, got {t_max}.')

    amplitudes = np.zeros((2 * t_max + 1, 3), dtype=np.complex128)
    amplitudes[t_max] = coin_amplitudes
    return SpinorState(amplitudes=amplitudes, t=0, t_max=t_max)


def check_light_cone(t: int, t_max: int, steps: int = 1):
    if t + steps > t_max:
        raise LightConeError(
            f'Evolving {steps} step(s) from t={t} exceeds the lattice half-width {t_max}.'
        )


def apply_coin(amplitudes: np.ndarray, coin: CoinMatrix) -> np.ndarray:
    # row i of the result is coin @ amplitudes[i]
    return amplitudes @ coin.T


def shift(amplitudes: np.ndarray) -> np.ndarray:
    """L moves to n-1, S stays, R moves to n+1."""
    out = np.empty_like(amplitudes)
    for chirality in Chirality:
        out[:, chirality] = np.roll(amplitudes[:, chirality], chirality.displacement)
    return out


def step_pure(state: SpinorState, coin: CoinMatrix) -> SpinorState:
    check_light_cone(state.t, state.t_max)
    return SpinorState(
        amplitudes=shift(apply_coin(state.amplitudes, coin)),
        t=state.t + 1,
        t_max=state.t_max,
    )


def evolve_pure(state: SpinorState, steps: int, coin: CoinMatrix) -> SpinorState:
    check_light_cone(state.t, state.t_max, steps)
    for _ in range(steps):
        state = step_pure(state, coin)
    return state


def position_distribution(state: SpinorState) -> PositionDistribution:
    return PositionDistribution(
        probs=np.sum(np.abs(state.amplitudes) ** 2, axis=1),
        t=state.t,
        t_max=state.t_max,
    )


def gcp(state: SpinorState) -> GcpVector:
    return GcpVector.from_array(np.sum(np.abs(state.amplitudes) ** 2, axis=0))


def interference_terms(state: SpinorState) -> InterferenceTerms:
    a = state.amplitudes[:, Chirality.L]
    b = state.amplitudes[:, Chirality.S]
    c = state.amplitudes[:, Chirality.R]
    return InterferenceTerms(
        q1=complex(np.sum(a * b.conj())),
        q2=complex(np.sum(a * c.conj())),
        q3=complex(np.sum(b * c.conj())),
    )


def gcp_evolution_rhs(g: GcpVector, q: InterferenceTerms) -> GcpVector:
    """
    One step of the global chirality probabilities under the Grover coin,
    written through GCP(t) and the interference terms Re Q_i(t).
    """
    markov = MARKOV_GCP.matrix @ g.as_array()
    return GcpVector.from_array(markov - INTERFERENCE_GCP_VECTORS @ q.real_parts / 9.0)


def gcp_step_identity_check(state: SpinorState, coin: CoinMatrix = None) -> float:
    if coin is None:
        coin = grover_coin()
    if not is_grover(coin):
        raise ValueError('The GCP evolution identity only holds for the Grover coin.')

    evolved = gcp(step_pure(state, coin)).as_array()
    predicted = gcp_evolution_rhs(gcp(state), interference_terms(state)).as_array()
    return float(np.max(np.abs(evolved - predicted)))