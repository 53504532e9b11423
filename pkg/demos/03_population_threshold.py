#!/usr/bin/env python3
"""Extinction of the full two-state population below and above the critical length."""

# %%
from driftparadox import RegimeParams, brownian, critical_length, lineage_extinction_probability, washout_probability
from driftparadox.simulate import SimConfig, estimate_extinction_probability, estimate_offspring, simulate_population

model = brownian(1.0, 1.0)
p = RegimeParams(1.0, 2.0, 1.0)
lc = critical_length(model, p)
cfg = SimConfig(seed=3, horizon=50.0, population_cap=20_000)
print(f"L_c = {lc:.6f}")

# %% One trajectory at twice the critical length
traj = simulate_population(model, p, 2 * lc, 20, cfg)
print(traj.status, "after", len(traj.times), "events; final benthic", traj.benthic[-1])

# %% Extinction fraction across the threshold (20 founders, 200 replicates)
for factor in (0.25, 0.5, 1.0, 2.0, 4.0):
    est = estimate_extinction_probability(model, p, factor * lc, 20, 200, cfg)
    ultimate = lineage_extinction_probability(model, p, factor * lc) ** 20
    print(f"L = {factor:4g} L_c   extinct {est.mean:.3f} +- {est.std_error:.3f}   ultimate {ultimate:.3f}")

# %% At L_c each settler leaves one settled descendant on average
phases, births = estimate_offspring(model, p, lc, cfg)
pi = washout_probability(model, p.settling_rate, lc)
print(f"settled phases {phases.mean:.4f} (1/pi = {1 / pi:.4f})")
print(f"offspring      {births.mean:.4f} (r/(l0 pi) = {p.growth_rate / p.departure_rate / pi:.4f})")
