"""
Density-matrix evolution on the joint (position ⊗ chirality) space.

The joint basis is position-major: index ``3 * (n + t_max) + x`` for site ``n``
and chirality ``x``. Internally the matrix is handled as a (N, 3, N, 3) view so
the coin and the Kraus elements act blockwise and the shift is a pair of
block-index rolls; the d×d unitary is never materialised.
"""
import logging

from dataclasses import dataclass

import numpy as np

from .coinspace import CoinMatrix, KrausSet
from .types import Chirality, GcpVector, InterferenceTerms, PositionDistribution
from .walk import SpinorState, check_light_cone


logger = logging.getLogger(__name__)


@dataclass
class JointDensity():
    entries: np.ndarray
    t: int
    t_max: int

    @property
    def num_sites(self) -> int:
        return 2 * self.t_max + 1

    @property
    def blocks(self) -> np.ndarray:
        n = self.num_sites
        return self.entries.reshape(n, 3, n, 3)

    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def hermitian_defect(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))


def _from_blocks(blocks: np.ndarray, t: int, t_max: int) -> JointDensity:
    d = blocks.shape[0] * 3
    return JointDensity(entries=blocks.reshape(d, d), t=t, t_max=t_max)


def from_pure(state: SpinorState) -> JointDensity:
    psi = state.amplitudes.reshape(-1)
    return JointDensity(entries=np.outer(psi, psi.conj()), t=state.t, t_max=state.t_max)


def _conjugate_blocks(blocks: np.ndarray, m: CoinMatrix) -> np.ndarray:
    """(I⊗m) ρ (I⊗m)† on the (N, 3, N, 3) view."""
    left = np.einsum('ab,nbmc->namc', m, blocks, optimize=True)
    return np.einsum('namc,dc->namd', left, m.conj(), optimize=True)


def _shift_blocks(blocks: np.ndarray) -> np.ndarray:
    out = np.empty_like(blocks)
    for x in Chirality:
        out[:, x] = np.roll(blocks[:, x], x.displacement, axis=0)
    shifted = np.empty_like(out)
    for y in Chirality:
        shifted[:, :, :, y] = np.roll(out[:, :, :, y], y.displacement, axis=2)
    return shifted


def apply_unitary_step(rho: JointDensity, coin: CoinMatrix) -> JointDensity:
    check_light_cone(rho.t, rho.t_max)
    blocks = _shift_blocks(_conjugate_blocks(rho.blocks, coin))
    return _from_blocks(blocks, rho.t + 1, rho.t_max)


def apply_kraus(rho: JointDensity, ks: KrausSet) -> JointDensity:
    blocks = rho.blocks
    out = np.zeros_like(blocks)
    for element in ks.elements:
        out += _conjugate_blocks(blocks, element)
    return _from_blocks(out, rho.t, rho.t_max)


def evolve_channel(rho: JointDensity, steps: int, coin: CoinMatrix, ks: KrausSet,
                   callback=None) -> JointDensity:
    """
    Repeats the coin+shift step followed by the Kraus channel. ``callback`` is
    called with the state after every step.
    """
    if steps < 0:
        raise ValueError(f'steps must be non-negative, got {steps}.')
    check_light_cone(rho.t, rho.t_max, steps)
    for _ in range(steps):
        rho = apply_kraus(apply_unitary_step(rho, coin), ks)
        if callback is not None:
            callback(rho)
    return rho


def _diagonal_blocks(rho: JointDensity) -> np.ndarray:
    # (N, 3) populations
    return np.real(np.diagonal(rho.entries)).reshape(rho.num_sites, 3)


def density_distribution(rho: JointDensity) -> PositionDistribution:
    return PositionDistribution(
        probs=_diagonal_blocks(rho).sum(axis=1),
        t=rho.t,
        t_max=rho.t_max,
    )


def density_gcp(rho: JointDensity) -> GcpVector:
    return GcpVector.from_array(_diagonal_blocks(rho).sum(axis=0))


def density_interference_terms(rho: JointDensity) -> InterferenceTerms:
    blocks = rho.blocks
    sites = np.arange(rho.num_sites)
    # same-site 3x3 blocks
    onsite = blocks[sites, :, sites, :]
    return InterferenceTerms(
        q1=complex(onsite[:, Chirality.L, Chirality.S].sum()),
        q2=complex(onsite[:, Chirality.L, Chirality.R].sum()),
        q3=complex(onsite[:, Chirality.S, Chirality.R].sum()),
    )


def purity(rho: JointDensity) -> float:
    # Tr(ρ²) = Σ|ρ_ij|² for Hermitian ρ
    return float(np.sum(np.abs(rho.entries) ** 2))


def min_eigenvalue(rho: JointDensity) -> float:
    return float(np.linalg.eigvalsh(rho.entries)[0])
