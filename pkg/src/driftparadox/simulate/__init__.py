"""Seeded Monte Carlo engines used to check the analytic results."""

from ._core import EstimateWithError, SimConfig, stream
from .branching import (
    TEST_FUNCTIONS,
    CloneCheckReport,
    clone_model_check,
    estimate_yule_mean,
    kesten_critical_speed,
    sample_yule,
    simulate_bbm_kesten,
)
from .population import (
    PopulationTrajectory,
    estimate_extinction_probability,
    estimate_offspring,
    replicate_summaries,
    simulate_population,
)
from .sampling import (
    advance_towards_level,
    estimate_mean_passage_time,
    estimate_washout,
    sample_passage_time,
    sample_passage_times,
)

__all__ = [
    "EstimateWithError",
    "SimConfig",
    "stream",
    "TEST_FUNCTIONS",
    "CloneCheckReport",
    "clone_model_check",
    "estimate_yule_mean",
    "kesten_critical_speed",
    "sample_yule",
    "simulate_bbm_kesten",
    "PopulationTrajectory",
    "estimate_extinction_probability",
    "estimate_offspring",
    "replicate_summaries",
    "simulate_population",
    "advance_towards_level",
    "estimate_mean_passage_time",
    "estimate_washout",
    "sample_passage_time",
    "sample_passage_times",
]
