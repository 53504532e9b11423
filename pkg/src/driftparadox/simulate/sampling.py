"""Exact and segment-wise samplers for first-passage times over ``L``."""

from __future__ import annotations

import math

import numpy as np

from ..levy import LevyModel, check
from ._core import PASSAGE, WASHOUT, EstimateWithError, SimConfig, binomial_estimate, map_blocks

__all__ = [
    "advance_towards_level",
    "sample_passage_times",
    "sample_passage_time",
    "estimate_washout",
    "estimate_mean_passage_time",
]


def advance_towards_level(rng, gap, mu, diffusion, h):
    """Run drifted Brownian motion towards a level ``gap`` away for time ``h``.

    ``mu > 0`` is the drift in the direction of the level.  Returns
    ``(hit, tau, new_gap)``: ``tau`` is the hitting time where ``hit`` and
    ``new_gap`` the remaining distance at ``h`` where not.

    The hitting time is inverse Gaussian.  On paths that survive, the end
    point is drawn from the killed transition density by rejection: a free
    Gaussian endpoint is kept with the bridge non-crossing probability
    ``1 - exp(-2 gap (gap - y) / (D h))``.
    """
    gap = np.asarray(gap, dtype=float)
    h = np.broadcast_to(np.asarray(h, dtype=float), gap.shape)
    if diffusion == 0:
        tau = gap / mu
        hit = tau <= h
        return hit, tau, np.where(hit, 0.0, gap - mu * h)

    tau = rng.wald(gap / mu, gap * gap / diffusion)
    hit = tau <= h
    new_gap = np.zeros_like(gap)
    todo = np.flatnonzero(~hit)
    g, hh = gap[todo], h[todo]
    while todo.size:
        y = rng.normal(mu * hh, np.sqrt(diffusion * hh))
        u = rng.random(todo.size)
        below = y < g
        arg = np.where(below, -2.0 * g * (g - y) / (diffusion * hh), 0.0)
        ok = below & (u >= np.exp(arg))
        new_gap[todo[ok]] = g[ok] - y[ok]
        todo, g, hh = todo[~ok], g[~ok], hh[~ok]
    return hit, tau, new_gap


def sample_passage_times(model: LevyModel, L, size, rng, horizon=math.inf, dt=math.inf):
    """Draw ``size`` independent copies of the first time the process exceeds ``L``.

    Paths not absorbed by ``horizon`` (scalar or per-path array) come back
    as ``inf``.  Without jumps the draw is a single inverse-Gaussian (or the
    deterministic ``L / drift``).  With jumps, the path is advanced between
    consecutive jump epochs in segments no longer than ``dt``; each segment
    is exact, so ``dt`` bounds work per step rather than introducing bias.
    """
    check(model)
    if not L >= 0:
        raise ValueError(f"boundary L must be ≥ 0, got {L}")
    horizon = np.broadcast_to(np.asarray(horizon, dtype=float), (size,))
    if L == 0:
        return np.zeros(size)

    mu, diffusion, jumps = model.drift, model.diffusion, model.jumps
    if model.is_brownian:
        if diffusion == 0:
            times = np.full(size, L / mu)
        else:
            times = rng.wald(np.full(size, L / mu), L * L / diffusion)
        return np.where(times <= horizon, times, np.inf)

    # with downward jumps the linear drift exceeds the effective velocity > 0
    rate = jumps.total_rate
    out = np.full(size, np.inf)
    active = np.arange(size)
    t = np.zeros(size)
    gap = np.full(size, float(L))
    hor = horizon.copy()
    while active.size:
        n = active.size
        to_jump = rng.exponential(1.0 / rate, n)
        remaining = hor - t
        h = np.minimum(np.minimum(to_jump, dt), remaining)
        hit, tau, new_gap = advance_towards_level(rng, gap, mu, diffusion, h)
        out[active[hit]] = t[hit] + tau[hit]

        alive = ~hit & (h < remaining)
        jumped = alive & (to_jump <= np.minimum(dt, remaining))
        new_gap[jumped] += jumps.sample_sizes(rng, int(jumped.sum()))
        active, t, gap, hor = active[alive], (t + h)[alive], new_gap[alive], hor[alive]
    return out


def sample_passage_time(model: LevyModel, L, rng, horizon=math.inf, dt=0.05):
    return float(sample_passage_times(model, L, 1, rng, horizon=horizon, dt=dt)[0])


def estimate_washout(model: LevyModel, lambda1, L, cfg: SimConfig) -> EstimateWithError:
    """Fraction of paths that reach ``L`` before an independent ``Exp(lambda1)`` clock."""
    check(model)
    cfg.check()
    if not lambda1 > 0:
        raise ValueError(f"settling rate must be > 0, got {lambda1}")
    if L == 0:
        return EstimateWithError(1.0, 0.0, cfg.n_paths)

    def block(rng, size):
        settle = rng.exponential(1.0 / lambda1, size)
        passage = sample_passage_times(model, L, size, rng, horizon=settle, dt=cfg.dt)
        return passage < settle

    washed = map_blocks(block, cfg.n_paths, cfg, WASHOUT)
    return binomial_estimate(int(washed.sum()), cfg.n_paths)


def estimate_mean_passage_time(model: LevyModel, L, cfg: SimConfig) -> EstimateWithError:
    """Sample mean of ``T_L`` over uncensored paths; censoring at ``cfg.horizon`` is counted."""
    check(model)
    cfg.check()
    times = map_blocks(
        lambda rng, size: sample_passage_times(model, L, size, rng, horizon=cfg.horizon, dt=cfg.dt),
        cfg.n_paths,
        cfg,
        PASSAGE,
    )
    finite = times[np.isfinite(times)]
    censored = times.size - finite.size
    if finite.size == 0:
        return EstimateWithError(math.nan, math.nan, cfg.n_paths, censored)
    se = float(finite.std(ddof=1) / math.sqrt(finite.size)) if finite.size > 1 else 0.0
    return EstimateWithError(float(finite.mean()), se, cfg.n_paths, censored)
