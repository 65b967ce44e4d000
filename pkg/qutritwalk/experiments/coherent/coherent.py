import logging

from ..experiment import Experiment
from ...analysis import sigma_of
from ...coinspace import grover_coin
from ...types import RunReport
from ...walk import (
    gcp,
    initial_state,
    interference_terms,
    position_distribution,
    step_pure,
)


logger = logging.getLogger(__name__)


class CoherentExperiment(Experiment):

    def _run(self) -> RunReport:
        coin = grover_coin()
        state = initial_state(self.config.initial_coin, self.config.steps + 1)

        gcps = [gcp(state)]
        qs = [interference_terms(state)]
        sigma = [0.0]
        for _ in range(self.config.steps):
            state = step_pure(state, coin)
            gcps.append(gcp(state))
            qs.append(interference_terms(state))
            sigma.append(sigma_of(position_distribution(state)))

        return self.build_report(
            position_distribution(state),
            gcps,
            sigma,
            qs,
            {'norm': state.norm()},
        )
