"""Reproducible desk-scale experiments over the package's modules."""

from .config import KINDS, ConfigError, ExperimentConfig
from .runner import ExperimentReport, run
from .stats import hoeffding_n, hoeffding_n_one_sided, z_score

__all__ = ["KINDS", "ConfigError", "ExperimentConfig", "ExperimentReport", "hoeffding_n",
           "hoeffding_n_one_sided", "run", "z_score"]
