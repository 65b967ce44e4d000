from .. import kraus
from ...coinspace import KrausKind


class PhaseDampingExperiment(kraus.KrausExperiment):
    KIND = KrausKind.PhaseDamping
