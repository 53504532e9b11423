#!/usr/bin/env python3
"""Critical domain length as the stream speeds up.

A population that only grows while settled has to be re-seeded from upstream.
Faster flow carries drifters further before they settle, so the domain has to
be longer, and for large speeds the length grows linearly in v.
"""

# %%
import numpy as np

from driftparadox import (
    ExponentialJumps,
    LevyModel,
    RegimeParams,
    asymptotic_critical_length,
    brownian,
    critical_curve,
    critical_length,
    persistence_verdict,
)

p = RegimeParams(growth_rate=1.0, departure_rate=2.0, settling_rate=1.0)

# %% Brownian drifters
rows = critical_curve(brownian(1.0, 1.0), p, [0.5, 1, 2, 4, 8, 16, 32, 64])
print(f"{'v':>6} {'L_c':>12} {'v ln(l0/r)/l1':>14} {'ratio':>8}")
for row in rows:
    print(f"{row.v:6g} {row.critical_length:12.6f} {row.asymptotic:14.6f} {row.ratio:8.4f}")

# %% More dispersion shortens the domain needed
for D in (0.0, 0.5, 1.0, 4.0):
    print(f"D={D:<4g} L_c={critical_length(brownian(2.0, D), p):.6f}")

# %% Downstream jumps at the same effective velocity
jumpy = LevyModel(0.0, 0.5, ExponentialJumps(1.0, 0.5)).with_velocity(2.0)
print("jump model     L_c =", critical_length(jumpy, p))
print("brownian D=0.5 L_c =", critical_length(brownian(2.0, 0.5), p))

# %% If departures are rarer than births the population never needs upstream help
print(persistence_verdict(brownian(1.0, 1.0), RegimeParams(1.0, 0.5, 1.0)))
print(np.isclose(asymptotic_critical_length(64, p), 64 * np.log(2)))
