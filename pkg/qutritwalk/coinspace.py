"""
Chirality-space (3×3) algebra: the Grover coin, the Gell-Mann basis, the
Hermitian matrix exponential and the qutrit Kraus sets.

Coin matrices are plain ``complex128`` arrays of shape (3, 3).
"""
import enum
import logging

from typing import List, Tuple
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .types import ConfigurationError


logger = logging.getLogger(__name__)


CoinMatrix = NDArray[np.complex128]

OMEGA = np.exp(2j * np.pi / 3)

UNITARY_TOLERANCE = 1e-12
HERMITIAN_TOLERANCE = 1e-12
HERMITIAN_REJECT_TOLERANCE = 1e-9


def is_unitary(m: CoinMatrix, atol: float = UNITARY_TOLERANCE) -> bool:
    return bool(np.all(np.isfinite(m))) and np.allclose(
        m.conj().T @ m, np.eye(m.shape[0]), rtol=0.0, atol=atol
    )


def is_hermitian(m: CoinMatrix, atol: float = HERMITIAN_TOLERANCE) -> bool:
    return bool(np.all(np.isfinite(m))) and hermitian_defect(m) <= atol


def hermitian_defect(m: CoinMatrix) -> float:
    return float(np.max(np.abs(m - m.conj().T)))


def grover_coin() -> CoinMatrix:
    return np.array(
        [[-1.0, 2.0, 2.0],
         [2.0, -1.0, 2.0],
         [2.0, 2.0, -1.0]],
        dtype=np.complex128,
    ) / 3.0


def is_grover(coin: CoinMatrix, atol: float = 1e-15) -> bool:
    return np.allclose(coin, grover_coin(), rtol=0.0, atol=atol)


def gellmann_basis() -> List[CoinMatrix]:
    """
    The eight Gell-Mann matrices λ_1..λ_8 in the particle-physics ordering,
    normalised to Tr(λ_i λ_j) = 2δ_ij.
    """
    lambdas = [np.zeros((3, 3), dtype=np.complex128) for _ in range(8)]
    # symmetric off-diagonal
    for lam, (j, k) in zip((lambdas[0], lambdas[3], lambdas[5]), ((0, 1), (0, 2), (1, 2))):
        lam[j, k] = 1.0
        lam[k, j] = 1.0
    # antisymmetric off-diagonal
    for lam, (j, k) in zip((lambdas[1], lambdas[4], lambdas[6]), ((0, 1), (0, 2), (1, 2))):
        lam[j, k] = -1.0j
        lam[k, j] = 1.0j
    lambdas[2][0, 0] = 1.0
    lambdas[2][1, 1] = -1.0
    lambdas[7][:, :] = np.diag([1.0, 1.0, -2.0]) / np.sqrt(3.0)
    return lambdas


_GELLMANN = np.stack(gellmann_basis())


def herm3_exp(a: CoinMatrix) -> CoinMatrix:
    """
    Returns e^{ia} for Hermitian ``a`` via the spectral decomposition
    a = V diag(θ) V†, so that e^{ia} = V diag(e^{iθ}) V†.
    """
    a = np.asarray(a, dtype=np.complex128)
    if a.shape != (3, 3):
        raise ValueError(f'Expected a 3x3 matrix, got shape {a.shape}.')
    defect = hermitian_defect(a)
    if not np.isfinite(defect) or defect > HERMITIAN_REJECT_TOLERANCE:
        raise ValueError(f'Matrix is not Hermitian (symmetry defect {defect:.3g}).')

    # symmetrise so eigh sees an exactly Hermitian input
    a = 0.5 * (a + a.conj().T)
    theta, vecs = np.linalg.eigh(a)
    return (vecs * np.exp(1j * theta)) @ vecs.conj().T


def herm3_exp_series(a: CoinMatrix, terms: int = 30) -> CoinMatrix:
    """Truncated power series of e^{ia}, kept as an independent oracle."""
    a = np.asarray(a, dtype=np.complex128)
    result = np.eye(3, dtype=np.complex128)
    term = np.eye(3, dtype=np.complex128)
    for k in range(1, terms + 1):
        term = term @ (1j * a) / k
        result = result + term
    return result


def gellmann_combination(alphas) -> CoinMatrix:
    alphas = np.asarray(alphas, dtype=np.float64)
    if alphas.shape != (8,):
        raise ValueError(f'Expected 8 Gell-Mann coefficients, got {alphas.shape}.')
    return np.tensordot(alphas, _GELLMANN, axes=1)


@enum.unique
class KrausKind(str, enum.Enum):
    PhaseDamping = 'phase_damping'
    AmplitudeDamping = 'amplitude_damping'


@dataclass(frozen=True, eq=False)
class KrausSet():
    elements: Tuple[CoinMatrix, ...]
    gamma: float
    kind: KrausKind

    def completeness_defect(self) -> float:
        total = sum(e.conj().T @ e for e in self.elements)
        return float(np.max(np.abs(total - np.eye(3))))

    def apply(self, rho: CoinMatrix) -> CoinMatrix:
        """Applies the channel to a single 3×3 coin density matrix."""
        return sum(e @ rho @ e.conj().T for e in self.elements)

    def __len__(self):
        return len(self.elements)


def _check_gamma(gamma: float):
    if not (0.0 <= gamma <= 1.0):
        raise ConfigurationError(f'gamma must lie in [0, 1], got {gamma}.')


def phase_damping_kraus(gamma: float) -> KrausSet:
    _check_gamma(gamma)
    e0 = np.sqrt(1.0 - gamma) * np.eye(3, dtype=np.complex128)
    e1 = np.sqrt(gamma) * np.diag([1.0, OMEGA, OMEGA ** 2]).astype(np.complex128)
    return KrausSet(elements=(e0, e1), gamma=float(gamma), kind=KrausKind.PhaseDamping)


def amplitude_damping_kraus(gamma: float) -> KrausSet:
    _check_gamma(gamma)
    s = np.sqrt(1.0 - gamma)
    e0 = np.diag([1.0, s, s]).astype(np.complex128)
    e1 = np.zeros((3, 3), dtype=np.complex128)
    e1[0, 1] = np.sqrt(gamma)
    e2 = np.zeros((3, 3), dtype=np.complex128)
    e2[0, 2] = np.sqrt(gamma)
    return KrausSet(elements=(e0, e1, e2), gamma=float(gamma), kind=KrausKind.AmplitudeDamping)


def kraus_set(kind: KrausKind, gamma: float) -> KrausSet:
    if KrausKind(kind) == KrausKind.PhaseDamping:
        return phase_damping_kraus(gamma)
    return amplitude_damping_kraus(gamma)


def coherence_factor(gamma: float, power: int = 1) -> complex:
    """
    Factor by which phase damping multiplies a coin coherence between
    chiralities whose labels differ by ``power`` (mod 3).
    """
    _check_gamma(gamma)
    return complex((1.0 - gamma) + gamma * np.conj(OMEGA) ** power)


@dataclass
class NoiseGenerator():
    sigma_a: float
    alphas: np.ndarray = field(default_factory=lambda: np.zeros(8))

    def __post_init__(self):
        if self.sigma_a < 0:
            raise ConfigurationError(f'sigma_a must be non-negative, got {self.sigma_a}.')


def sample_noise_rotation(gen: NoiseGenerator, rng) -> CoinMatrix:
    """
    Draws α_k ~ N(0, σ_a²) for the eight Gell-Mann directions and returns
    e^{i Σ α_k λ_k}. ``rng`` is a :class:`qutritwalk.stochastic.RngStream`.
    """
    gen.alphas = rng.normal(gen.sigma_a, 8)
    if not np.any(gen.alphas):
        return np.eye(3, dtype=np.complex128)
    return herm3_exp(gellmann_combination(gen.alphas))
