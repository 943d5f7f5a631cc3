"""Distribution-shift experiment and binary-slice sweeps."""

from .document import ExperimentDocument, load_experiment_config, parse_experiment_document
from .experiment import StrategyFailed, run_experiment, run_strategy, summarize
from .models import (
    AdsAware,
    BoundClipped,
    EntropyOnly,
    ExperimentConfig,
    FixedStep,
    MetricsRow,
    RunSummary,
    StrategySpec,
    default_strategies,
)
from .strategies import effective_step
from .sweep import RegionRow, SweepRow, certified_region, open_grid, sweep_binary_slice

__all__ = [
    "AdsAware",
    "BoundClipped",
    "EntropyOnly",
    "ExperimentConfig",
    "ExperimentDocument",
    "FixedStep",
    "MetricsRow",
    "RegionRow",
    "RunSummary",
    "StrategyFailed",
    "StrategySpec",
    "SweepRow",
    "certified_region",
    "default_strategies",
    "effective_step",
    "load_experiment_config",
    "open_grid",
    "parse_experiment_document",
    "run_experiment",
    "run_strategy",
    "summarize",
    "sweep_binary_slice",
]
