#!/usr/bin/env python3
"""Branching Brownian motion drifting into an absorbing wall.

Here every particle keeps branching while it moves, so the population can
outrun the drift unless the drift exceeds sqrt(2 D r). That threshold is a
speed, whereas the settle-and-drift population has a threshold in domain
length that exists at every speed.
"""

# %%
from driftparadox.simulate import SimConfig, kesten_critical_speed, simulate_bbm_kesten

D, r = 1.0, 0.5
crit = kesten_critical_speed(D, r)
cfg = SimConfig(seed=9, horizon=30.0, population_cap=1000)
print(f"critical speed {crit:g}")

# %%
for factor in (2.0, 1.5, 1.0, 0.75, 0.5, 0.25):
    alive = simulate_bbm_kesten(D, r, -factor * crit, 2.0, 200, cfg)
    print(f"drift {-factor * crit:6.3f}  survival {alive.mean():.3f}")
