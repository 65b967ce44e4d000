from .. import kraus
from ...coinspace import KrausKind


class AmplitudeDampingExperiment(kraus.KrausExperiment):
    KIND = KrausKind.AmplitudeDamping
