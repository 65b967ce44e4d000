from .unitary_noise import UnitaryNoiseExperiment
