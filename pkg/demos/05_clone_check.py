#!/usr/bin/env python3
"""Sanity check for the branching-clone picture.

If every particle branches at rate r and moves as Brownian motion with drift,
then E sum f(X_i(t)) solves the linear equation u_t = (D/2) u'' + v u' + r u.
The Monte Carlo mean should match e^{rt} E f(x0 + vt + sqrt(D) B_t).
"""

# %%
from driftparadox.simulate import TEST_FUNCTIONS, SimConfig, clone_model_check

cfg = SimConfig(seed=5, n_paths=100_000)

# %%
for name in sorted(TEST_FUNCTIONS):
    for t in (0.5, 1.0, 2.0):
        rep = clone_model_check(1.0, 1.0, 0.5, name, 0.0, t, cfg)
        print(
            f"f={name:<5} t={t:<3g} MC={rep.mc_mean:10.5f} exact={rep.analytic:10.5f} "
            f"gap={rep.martingale_gap:+.4f}+-{rep.gap_std_error:.4f} {'ok' if rep.passed else 'FAIL'}"
        )
