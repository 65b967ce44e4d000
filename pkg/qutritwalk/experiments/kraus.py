import logging

from .experiment import Experiment
from ..analysis import sigma_of
from ..coinspace import KrausKind, grover_coin, kraus_set
from ..density import (
    density_distribution,
    density_gcp,
    density_interference_terms,
    evolve_channel,
    from_pure,
)
from ..types import RunReport
from ..walk import initial_state


logger = logging.getLogger(__name__)


class KrausExperiment(Experiment):
    """Direct density-matrix evolution under a chirality Kraus channel."""
    KIND = None

    REQUIRED_PARAMETERS = (Experiment.CONFIGURATION_GAMMA,)
    PARAMETERS = REQUIRED_PARAMETERS
    MAX_STEPS = 5000
    # complex128, before einsum temporaries
    BYTES_PER_ENTRY = 16
    # runs above this are logged as a warning
    LARGE_STATE_BYTES = 10 ** 9

    def estimated_bytes(self) -> int:
        # the joint density matrix has (3(2T+3))² entries
        d = 3 * (2 * (self.config.steps + 1) + 1)
        return self.BYTES_PER_ENTRY * d * d

    def _run(self) -> RunReport:
        if self.estimated_bytes() > self.LARGE_STATE_BYTES:
            logger.warning(f'{self.name}: large density matrix{self._memory_note()}')
        ks = kraus_set(KrausKind(self.KIND), self.config.gamma)
        coin = grover_coin()
        rho = from_pure(initial_state(self.config.initial_coin, self.config.steps + 1))

        gcps = [density_gcp(rho)]
        qs = [density_interference_terms(rho)]
        sigma = [0.0]
        traces = [rho.trace().real]

        def record(rho):
            gcps.append(density_gcp(rho))
            qs.append(density_interference_terms(rho))
            sigma.append(sigma_of(density_distribution(rho)))
            traces.append(rho.trace().real)
            if rho.t % 10 == 0:
                logger.debug(f'{self.name}: t={rho.t}')

        rho = evolve_channel(rho, self.config.steps, coin, ks, callback=record)
        return self.build_report(
            density_distribution(rho),
            gcps,
            sigma,
            qs,
            {
                'trace': traces[-1],
                'max_trace_drift': max(abs(tr - 1.0) for tr in traces),
                'hermitian_defect': rho.hermitian_defect(),
            },
        )
