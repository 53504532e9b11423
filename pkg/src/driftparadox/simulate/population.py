"""Benthic/drift population dynamics in reset mode.

Benthic individuals give birth (rate ``r``) and depart (rate ``lambda0``).  A
departing individual starts a fresh drift excursion at distance ``L`` from
the outlet: it is lost at ``T_L`` if that comes before its ``Exp(lambda1)``
settling time, and otherwise rejoins the benthos when it settles.  Drifting
individuals do not reproduce.

Individuals never interact, so the simulation advances every pending
individual by one event per round instead of keeping a global event queue.
The event log is sorted at the end to recover the counting trajectory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..levy import LevyModel, check
from ..persistence import RegimeParams
from ._core import (
    OFFSPRING,
    POPULATION,
    EstimateWithError,
    SimConfig,
    binomial_estimate,
    map_blocks,
    map_replicates,
    sample_mean,
    stream,
)
from .sampling import sample_passage_times

__all__ = [
    "PopulationTrajectory",
    "simulate_population",
    "replicate_summaries",
    "estimate_extinction_probability",
    "estimate_offspring",
]


@dataclass(frozen=True)
class PopulationTrajectory:
    times: np.ndarray
    benthic: np.ndarray
    mobile: np.ndarray
    extinct: bool
    extinction_time: float | None
    capped: bool = False

    @property
    def status(self):
        if self.extinct:
            return "extinct"
        return "survived (capped)" if self.capped else "survived"


def _run(model, p, L, initial, cfg, rng, record):
    r, lam0, lam1 = p.growth_rate, p.departure_rate, p.settling_rate
    total = r + lam0
    horizon = cfg.horizon
    pending = np.zeros(initial)  # times at which individuals (re)enter the benthos
    alive_at_horizon = 0
    last_removal = 0.0
    frontier = horizon
    capped = False
    log = []

    while pending.size:
        if pending.size + alive_at_horizon >= cfg.population_cap:
            capped = True
            frontier = float(pending.min())
            break
        event = pending + rng.exponential(1.0 / total, pending.size)
        late = event >= horizon
        alive_at_horizon += int(late.sum())
        event = event[~late]

        birth = rng.random(event.size) * total < r
        t_birth = event[birth]
        t_depart = event[~birth]
        settle = rng.exponential(1.0 / lam1, t_depart.size)
        passage = sample_passage_times(model, L, t_depart.size, rng, horizon=settle, dt=cfg.dt)
        washed = passage < settle

        t_removed = t_depart[washed] + passage[washed]
        t_return = t_depart[~washed] + settle[~washed]
        removed_in = t_removed < horizon
        return_in = t_return < horizon
        alive_at_horizon += int((~removed_in).sum() + (~return_in).sum())
        if removed_in.any():
            last_removal = max(last_removal, float(t_removed[removed_in].max()))

        if record:
            log.append((t_birth, 1, 0))
            log.append((t_depart, -1, 1))
            log.append((t_removed[removed_in], 0, -1))
            log.append((t_return[return_in], 1, -1))

        pending = np.concatenate([t_birth, t_birth, t_return[return_in]])

    extinct = not capped and alive_at_horizon == 0
    if record:
        times = np.concatenate([[0.0]] + [t for t, _, _ in log])
        d_benthic = np.concatenate([[initial]] + [np.full(t.size, db) for t, db, _ in log])
        d_mobile = np.concatenate([[0]] + [np.full(t.size, dm) for t, _, dm in log])
        order = np.argsort(times, kind="stable")
        times, d_benthic, d_mobile = times[order], d_benthic[order], d_mobile[order]
        keep = times <= frontier if capped else times < horizon
        times = times[keep]
        benthic = np.cumsum(d_benthic[keep]).astype(np.int64)
        mobile = np.cumsum(d_mobile[keep]).astype(np.int64)
    else:
        times = benthic = mobile = np.empty(0)
    return PopulationTrajectory(
        times, benthic, mobile, extinct, last_removal if extinct else None, capped
    )


def simulate_population(
    model: LevyModel,
    p: RegimeParams,
    L: float,
    initial_benthic: int,
    cfg: SimConfig,
    rng: np.random.Generator | None = None,
    record: bool = True,
) -> PopulationTrajectory:
    """One trajectory up to ``cfg.horizon`` or until ``cfg.population_cap`` individuals.

    Without an explicit ``rng`` the run uses substream 0 of ``cfg.seed``.
    """
    check(model)
    p.check()
    cfg.check()
    if not initial_benthic >= 1:
        raise ValueError("initialBenthic ≥ 1 required")
    if not L >= 0:
        raise ValueError(f"boundary L must be ≥ 0, got {L}")
    if rng is None:
        rng = stream(cfg.seed, POPULATION, 0)
    return _run(model, p, L, int(initial_benthic), cfg, rng, record)


def replicate_summaries(model, p, L, initial_benthic, replicates, cfg: SimConfig):
    """``(replicate, extinct, extinction_time)`` per replicate, in replicate order."""
    runs = map_replicates(
        lambda rng: simulate_population(model, p, L, initial_benthic, cfg, rng=rng, record=False),
        replicates,
        cfg,
        POPULATION,
    )
    return [(i, run.extinct, run.extinction_time) for i, run in enumerate(runs)]


def estimate_extinction_probability(
    model, p, L, initial_benthic, replicates, cfg: SimConfig
) -> EstimateWithError:
    if not replicates >= 1:
        raise ValueError("replicates ≥ 1 required")
    rows = replicate_summaries(model, p, L, initial_benthic, replicates, cfg)
    return binomial_estimate(sum(extinct for _, extinct, _ in rows), replicates)


def estimate_offspring(model: LevyModel, p: RegimeParams, L: float, cfg: SimConfig):
    """Lifetime statistics of single individuals, estimated from ``cfg.n_paths`` lives.

    Returns ``(phases, offspring)``: the number of benthic phases before the
    individual is washed out, and the number of births over its life.
    Wash-out is decided by comparing sampled ``T_L`` with sampled settling
    times, so the estimates do not use the analytic wash-out probability.
    """
    check(model)
    p.check()
    cfg.check()
    r, lam0, lam1 = p.growth_rate, p.departure_rate, p.settling_rate
    stay = lam0 / (r + lam0)

    def block(rng, size):
        phases = np.zeros(size, dtype=np.int64)
        births = np.zeros(size, dtype=np.int64)
        active = np.arange(size)
        while active.size:
            births[active] += rng.geometric(stay, active.size) - 1
            phases[active] += 1
            settle = rng.exponential(1.0 / lam1, active.size)
            passage = sample_passage_times(model, L, active.size, rng, horizon=settle, dt=cfg.dt)
            active = active[passage >= settle]
        return phases, births

    phases, births = map_blocks(block, cfg.n_paths, cfg, OFFSPRING)
    return sample_mean(phases), sample_mean(births)


def extinction_fraction_bound(q_lineage, initial):
    """Ultimate extinction probability of ``initial`` independent lineages."""
    return math.pow(q_lineage, initial)
