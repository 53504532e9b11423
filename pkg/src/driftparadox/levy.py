"""Spectrally negative Lévy processes with finite-activity downward jumps.

A model is ``Y_t = drift * t + sqrt(diffusion) * B_t - J_t`` where ``J`` is a
compound Poisson process with positive jump magnitudes.  Everything here is
expressed through the Laplace exponent

    psi(theta) = log E exp(theta * Y_1)
               = drift * theta + diffusion * theta**2 / 2
                 + sum_jumps rate * (E exp(-theta * size) - 1),

which is finite and convex on ``theta >= 0``.  The cumulant used in the
fluctuation-theory literature for this setting is ``phi(theta) = -psi(-theta)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "NoJumps",
    "ExponentialJumps",
    "FixedJumps",
    "DiscreteJumps",
    "JumpSpec",
    "LevyModel",
    "InvalidModelError",
    "brownian",
    "deterministic",
    "validate",
    "check",
    "effective_velocity",
    "laplace_exponent",
    "cumulant",
]


class InvalidModelError(ValueError):
    """Raised when a model violates one of its invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class NoJumps:
    total_rate = 0.0
    mean_rate = 0.0

    def transform_term(self, theta):
        return 0.0 * np.asarray(theta, dtype=float)

    def sample_sizes(self, rng, size):
        return np.zeros(size)

    def violations(self):
        return []


@dataclass(frozen=True)
class ExponentialJumps:
    """Downward jumps at ``rate`` with exponentially distributed magnitudes."""

    rate: float
    mean_size: float

    @property
    def total_rate(self):
        return self.rate

    @property
    def mean_rate(self):
        return self.rate * self.mean_size

    def transform_term(self, theta):
        # rate * (alpha / (alpha + theta) - 1) with alpha = 1 / mean_size
        x = np.asarray(theta, dtype=float) * self.mean_size
        return -self.rate * x / (1.0 + x)

    def sample_sizes(self, rng, size):
        return rng.exponential(self.mean_size, size)

    def violations(self):
        out = []
        if not self.rate >= 0:
            out.append("jump rates must be ≥ 0")
        if not self.mean_size > 0:
            out.append("jump sizes must be > 0")
        return out


@dataclass(frozen=True)
class FixedJumps:
    """Downward jumps of constant magnitude ``size`` at ``rate``."""

    rate: float
    size: float

    @property
    def total_rate(self):
        return self.rate

    @property
    def mean_rate(self):
        return self.rate * self.size

    def transform_term(self, theta):
        return self.rate * np.expm1(-np.asarray(theta, dtype=float) * self.size)

    def sample_sizes(self, rng, size):
        return np.full(size, float(self.size))

    def violations(self):
        out = []
        if not self.rate >= 0:
            out.append("jump rates must be ≥ 0")
        if not self.size > 0:
            out.append("jump sizes must be > 0")
        return out


@dataclass(frozen=True)
class DiscreteJumps:
    """Finitely many jump magnitudes, each with its own rate.

    ``atoms`` is a sequence of ``(size, rate)`` pairs.
    """

    atoms: tuple[tuple[float, float], ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(
            self, "atoms", tuple((float(s), float(r)) for s, r in self.atoms)
        )

    @property
    def total_rate(self):
        return math.fsum(r for _, r in self.atoms)

    @property
    def mean_rate(self):
        return math.fsum(s * r for s, r in self.atoms)

    def transform_term(self, theta):
        theta = np.asarray(theta, dtype=float)
        total = np.zeros_like(theta)
        for s, r in self.atoms:
            total = total + r * np.expm1(-theta * s)
        return total

    def sample_sizes(self, rng, size):
        sizes = np.array([s for s, _ in self.atoms])
        rates = np.array([r for _, r in self.atoms])
        idx = rng.choice(len(sizes), size=size, p=rates / rates.sum())
        return sizes[idx]

    def violations(self):
        out = []
        if any(not r >= 0 for _, r in self.atoms):
            out.append("jump rates must be ≥ 0")
        if any(not s > 0 for s, _ in self.atoms):
            out.append("jump sizes must be > 0")
        return out


JumpSpec = NoJumps | ExponentialJumps | FixedJumps | DiscreteJumps


@dataclass(frozen=True)
class LevyModel:
    """Linear drift, Brownian diffusion coefficient and downward jumps.

    Construction never raises; use :func:`validate` or :func:`check`.
    """

    drift: float
    diffusion: float = 0.0
    jumps: JumpSpec = field(default_factory=NoJumps)

    @property
    def is_brownian(self):
        """True for drifted Brownian motion (or pure drift) without jumps."""
        return isinstance(self.jumps, NoJumps) or self.jumps.total_rate == 0

    def with_velocity(self, v):
        """Same diffusion and jumps, linear drift shifted so the effective velocity is ``v``."""
        return LevyModel(v + self.jumps.mean_rate, self.diffusion, self.jumps)


def brownian(v, diffusion):
    return LevyModel(float(v), float(diffusion), NoJumps())


def deterministic(v):
    return LevyModel(float(v), 0.0, NoJumps())


def _velocity(model):
    return model.drift - model.jumps.mean_rate


def validate(model):
    """Return the list of violated invariants (empty when the model is valid)."""
    out = []
    if not model.diffusion >= 0:
        out.append("diffusion must be ≥ 0")
    jump_problems = model.jumps.violations()
    out.extend(jump_problems)
    if not math.isfinite(model.drift):
        out.append("drift must be finite")
    elif not jump_problems:
        # also covers the degenerate case: no diffusion, no jumps, drift <= 0
        if not _velocity(model) > 0:
            out.append("effective velocity must be positive")
    return out


def check(model):
    problems = validate(model)
    if problems:
        raise InvalidModelError(problems)
    return model


def effective_velocity(model):
    """Mean displacement per unit time, ``drift - sum(rate * mean jump size)``.

    Raises
    ------
    InvalidModelError
        If the model is invalid, in particular when the velocity is not positive.
    """
    check(model)
    return _velocity(model)


def laplace_exponent(model, theta):
    """Evaluate ``psi(theta)`` for ``theta >= 0`` (scalar or array)."""
    check(model)
    theta_arr = np.asarray(theta, dtype=float)
    if np.any(theta_arr < 0):
        raise ValueError("theta must be ≥ 0")
    value = (
        model.drift * theta_arr
        + 0.5 * model.diffusion * theta_arr * theta_arr
        + model.jumps.transform_term(theta_arr)
    )
    if np.ndim(theta) == 0:
        return float(value)
    return value


def cumulant(model, theta):
    """Cumulant in the sign convention ``phi(theta) = -psi(-theta)``, for ``theta <= 0``."""
    theta_arr = np.asarray(theta, dtype=float)
    if np.any(theta_arr > 0):
        raise ValueError("cumulant is evaluated on theta ≤ 0 only")
    return -laplace_exponent(model, -theta_arr if np.ndim(theta) else -float(theta))
