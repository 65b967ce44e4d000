from .broken_links import BrokenLinksExperiment
