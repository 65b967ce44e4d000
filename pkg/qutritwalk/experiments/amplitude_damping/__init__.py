from .amplitude_damping import AmplitudeDampingExperiment
