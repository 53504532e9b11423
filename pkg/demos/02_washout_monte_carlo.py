#!/usr/bin/env python3
"""Wash-out probability: closed form against simulated passage times.

A drifter that leaves at the upstream end is lost if it reaches the downstream
end before settling. Settling is exponential, so the loss probability is the
Laplace transform of the passage time across the domain.
"""

# %%
from driftparadox import mean_passage_time, washout_probability
from driftparadox.crosscheck import CANONICAL_CASES
from driftparadox.simulate import SimConfig, estimate_mean_passage_time, estimate_washout

cfg = SimConfig(seed=1, n_paths=100_000)

# %%
print(f"{'case':<20} {'exact':>10} {'MC':>10} {'se':>9} {'z':>6}")
for case in CANONICAL_CASES:
    exact = washout_probability(case.model, case.lambda1, case.L)
    est = estimate_washout(case.model, case.lambda1, case.L, cfg)
    print(f"{case.name:<20} {exact:10.6f} {est.mean:10.6f} {est.std_error:9.2e} {est.z_score(exact):6.2f}")

# %% Mean passage time depends only on the effective velocity
for case in CANONICAL_CASES:
    est = estimate_mean_passage_time(case.model, case.L, cfg)
    print(f"{case.name:<20} L/v={mean_passage_time(case.model, case.L):8.4f} MC={est.mean:8.4f}")
