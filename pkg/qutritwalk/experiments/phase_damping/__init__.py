from .phase_damping import PhaseDampingExperiment
