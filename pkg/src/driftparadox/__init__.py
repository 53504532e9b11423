"""Persistence of drifting populations with benthic/drift regime switching.

The mobile phase moves as a spectrally negative Lévy process towards an
absorbing outlet at distance ``L``.  The package computes first-passage
transforms, wash-out probabilities and critical domain lengths, and checks
them against seeded Monte Carlo simulation.
"""

from .levy import (
    DiscreteJumps,
    ExponentialJumps,
    FixedJumps,
    InvalidModelError,
    LevyModel,
    NoJumps,
    brownian,
    cumulant,
    deterministic,
    effective_velocity,
    laplace_exponent,
    validate,
)
from .passage import (
    RootFindingError,
    eta,
    inverse_laplace_exponent,
    log_passage_time_transform,
    mean_passage_time,
    passage_time_transform,
    washout_probability,
)
from .persistence import (
    AlwaysPersists,
    CriticalLength,
    CurveRow,
    InvalidParamsError,
    RegimeParams,
    asymptotic_critical_length,
    critical_curve,
    critical_length,
    critical_length_brownian_closed_form,
    lineage_extinction_probability,
    offspring_mean,
    persistence_verdict,
    round_trip_residual,
)
from .simulate import EstimateWithError, SimConfig

__version__ = "0.1.0"
