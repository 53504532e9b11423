"""Branching contrasts: independent branching Brownian motion versus clone growth."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._core import BBM, CLONE, YULE, EstimateWithError, SimConfig, map_blocks, map_replicates, sample_mean
from .sampling import advance_towards_level

__all__ = [
    "simulate_bbm_kesten",
    "kesten_critical_speed",
    "sample_yule",
    "TestFunction",
    "TEST_FUNCTIONS",
    "CloneCheckReport",
    "clone_model_check",
]


def kesten_critical_speed(diffusion, r):
    """Drift speed ``sqrt(2 D r)`` above which absorbed BBM dies out surely."""
    return math.sqrt(2.0 * diffusion * r)


def _bbm_survives(rng, diffusion, r, v, x0, horizon, cap):
    x = np.array([float(x0)])
    t = np.zeros(1)
    speed = -v
    while x.size:
        if x.size >= cap:
            return True
        remaining = horizon - t
        to_split = rng.exponential(1.0 / r, x.size) if r > 0 else np.full(x.size, np.inf)
        splits = to_split < remaining
        h = np.where(splits, to_split, remaining)
        hit, _, new_x = advance_towards_level(rng, x, speed, diffusion, h)
        if np.any(~hit & ~splits):
            return True
        keep = ~hit & splits
        x = np.repeat(new_x[keep], 2)
        t = np.repeat((t + h)[keep], 2)
    return False


def simulate_bbm_kesten(diffusion, r, v, x0, replicates, cfg: SimConfig) -> np.ndarray:
    """Survival flags for branching Brownian motion killed at the origin.

    Particles start at ``x0 > 0``, move with drift ``v < 0`` and diffusion
    ``D``, and split in two at rate ``r``.  A replicate survives when some
    particle is alive at ``cfg.horizon`` or the population reaches
    ``cfg.population_cap``.
    """
    cfg.check()
    if not v < 0:
        raise ValueError(f"drift must be negative (towards the origin), got {v}")
    if not diffusion > 0 or not r >= 0 or not x0 > 0:
        raise ValueError("need D > 0, r ≥ 0 and x0 > 0")
    flags = map_replicates(
        lambda rng: _bbm_survives(rng, diffusion, r, v, x0, cfg.horizon, cfg.population_cap),
        replicates,
        cfg,
        BBM,
    )
    return np.array(flags, dtype=bool)


def sample_yule(r, t, size, rng):
    """Population at time ``t`` of a rate-``r`` Yule process from one ancestor."""
    return rng.geometric(math.exp(-r * t), size)


def estimate_yule_mean(r, t, cfg: SimConfig) -> EstimateWithError:
    return sample_mean(map_blocks(lambda rng, size: sample_yule(r, t, size, rng), cfg.n_paths, cfg, YULE))


@dataclass(frozen=True)
class TestFunction:
    """A test function with its derivatives and Gaussian expectation."""

    name: str
    f: object
    d1: object
    d2: object
    # E f(Y) for Y ~ Normal(mean, var)
    gaussian_mean: object

    __test__ = False

    def generator(self, x, diffusion, v, r):
        return 0.5 * diffusion * self.d2(x) + v * self.d1(x) + r * self.f(x)


def _gauss_mean(m, var):
    scale = 1.0 + 2.0 * var
    return math.exp(-m * m / scale) / math.sqrt(scale)


TEST_FUNCTIONS = {
    "x": TestFunction(
        "x",
        lambda x: x,
        lambda x: np.ones_like(x),
        lambda x: np.zeros_like(x),
        lambda m, var: m,
    ),
    "x2": TestFunction(
        "x2",
        lambda x: x * x,
        lambda x: 2.0 * x,
        lambda x: np.full_like(x, 2.0),
        lambda m, var: m * m + var,
    ),
    "gauss": TestFunction(
        "gauss",
        lambda x: np.exp(-x * x),
        lambda x: -2.0 * x * np.exp(-x * x),
        lambda x: (4.0 * x * x - 2.0) * np.exp(-x * x),
        _gauss_mean,
    ),
}


@dataclass(frozen=True)
class CloneCheckReport:
    t: float
    mc_mean: float
    mc_std_error: float
    analytic: float
    martingale_gap: float
    gap_std_error: float
    n: int

    @property
    def mean_ok(self):
        return abs(self.mc_mean - self.analytic) <= 4.0 * self.mc_std_error

    @property
    def gap_ok(self):
        return abs(self.martingale_gap) <= 4.0 * self.gap_std_error

    @property
    def passed(self):
        return self.mean_ok and self.gap_ok


def clone_model_check(diffusion, v, r, f, x0, t, cfg: SimConfig) -> CloneCheckReport:
    """Monte Carlo check of clone growth driven by a rate-``r`` Yule process.

    All ``N_t`` clones sit at the single position ``Y_t``, so the summed
    observable is ``N_t f(Y_t)`` with ``E = exp(r t) E f(Y_t)``.  The
    martingale gap uses

        N_t f(Y_t) - t N_U (A_r f)(Y_U) - f(x0),   U ~ Uniform(0, t),

    whose mean is zero; ``t N_U (A_r f)(Y_U)`` is an unbiased estimate of the
    compensator integral on the same path.
    """
    cfg.check()
    fn = TEST_FUNCTIONS[f] if isinstance(f, str) else f
    if not 0 <= t <= cfg.horizon:
        raise ValueError(f"need 0 ≤ t ≤ horizon, got t={t}")
    analytic = math.exp(r * t) * fn.gaussian_mean(x0 + v * t, diffusion * t)
    if t == 0:
        f0 = float(fn.f(np.float64(x0)))
        return CloneCheckReport(0.0, f0, 0.0, analytic, 0.0, 0.0, cfg.n_paths)

    def block(rng, size):
        u = rng.uniform(0.0, t, size)
        n_u = rng.geometric(np.exp(-r * u))
        y_u = x0 + v * u + np.sqrt(diffusion * u) * rng.standard_normal(size)
        rest = t - u
        n_t = n_u + rng.negative_binomial(n_u, np.exp(-r * rest))
        y_t = y_u + v * rest + np.sqrt(diffusion * rest) * rng.standard_normal(size)
        observed = n_t * fn.f(y_t)
        gap = observed - t * n_u * fn.generator(y_u, diffusion, v, r) - fn.f(np.float64(x0))
        return observed, gap

    observed, gap = map_blocks(block, cfg.n_paths, cfg, CLONE)
    obs = sample_mean(observed)
    g = sample_mean(gap)
    return CloneCheckReport(float(t), obs.mean, obs.std_error, analytic, g.mean, g.std_error, cfg.n_paths)
