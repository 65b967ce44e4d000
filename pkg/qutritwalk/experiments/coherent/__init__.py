from .coherent import CoherentExperiment
