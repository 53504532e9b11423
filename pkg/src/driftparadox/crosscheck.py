"""Monte Carlo cross-validation of the analytic results.

Each check pairs an analytic value with an independent simulation estimate.
Statistical checks pass when ``|estimate - expected| <= 4 * se``; threshold
checks (extinction and survival fractions) compare against a fixed bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .levy import ExponentialJumps, FixedJumps, LevyModel, brownian, deterministic
from .passage import mean_passage_time, washout_probability
from .persistence import RegimeParams, critical_length, offspring_mean
from .simulate import (
    TEST_FUNCTIONS,
    SimConfig,
    clone_model_check,
    estimate_extinction_probability,
    estimate_mean_passage_time,
    estimate_offspring,
    estimate_washout,
    estimate_yule_mean,
    kesten_critical_speed,
    simulate_bbm_kesten,
)
from .simulate._core import binomial_estimate

SIGMAS = 4.0
WIDE_ERROR_BARS = 1000


@dataclass(frozen=True)
class Case:
    """A model with the boundary and settling rate used to exercise it."""

    name: str
    model: LevyModel
    L: float
    lambda1: float


CANONICAL_CASES = (
    Case("brownian-v1-D1", brownian(1.0, 1.0), 1.0, 1.0),
    Case("brownian-v0.5-D2", brownian(0.5, 2.0), 2.0, 0.5),
    Case("brownian-v3-D0.25", brownian(3.0, 0.25), 5.0, 0.2),
    Case("exponential-jumps", LevyModel(2.0, 0.5, ExponentialJumps(1.0, 0.5)), 3.0, 0.5),
    Case("fixed-jumps", LevyModel(2.0, 0.0, FixedJumps(0.5, 1.0)), 3.0, 0.5),
    Case("deterministic", deterministic(2.0), 2.0, 1.0),
)

DEFAULT_MODEL = brownian(1.0, 1.0)
DEFAULT_PARAMS = RegimeParams(1.0, 2.0, 1.0)
CLONE_TIMES = (0.5, 1.0, 2.0)


@dataclass(frozen=True)
class CheckResult:
    check: str
    expected: float
    estimate: float
    std_error: float
    rule: str
    passed: bool
    n: int

    @property
    def z(self):
        if self.rule != "4se":
            return None
        if self.std_error == 0:
            return 0.0 if self.estimate == self.expected else math.inf
        return (self.estimate - self.expected) / self.std_error

    @property
    def note(self):
        return "wide error bars" if self.rule == "4se" and self.n < WIDE_ERROR_BARS else ""

    def as_dict(self):
        return {
            "check": self.check,
            "expected": self.expected,
            "estimate": self.estimate,
            "std_error": self.std_error,
            "z": self.z,
            "rule": self.rule,
            "passed": self.passed,
            "note": self.note,
        }


def _stat(check, expected, est):
    ok = abs(est.mean - expected) <= SIGMAS * est.std_error
    return CheckResult(check, expected, est.mean, est.std_error, "4se", ok, est.n)


def _below(check, bound, est):
    return CheckResult(check, bound, est.mean, est.std_error, f"<{bound:g}", est.mean < bound, est.n)


def _above(check, bound, est):
    return CheckResult(check, bound, est.mean, est.std_error, f">{bound:g}", est.mean > bound, est.n)


def passage_checks(case: Case, cfg: SimConfig):
    washout = estimate_washout(case.model, case.lambda1, case.L, cfg)
    mean_time = estimate_mean_passage_time(case.model, case.L, cfg)
    return [
        _stat(f"washout[{case.name}]", washout_probability(case.model, case.lambda1, case.L), washout),
        _stat(f"mean_passage[{case.name}]", mean_passage_time(case.model, case.L), mean_time),
    ]


def threshold_checks(model, params, cfg: SimConfig, replicates=200, initial=20, horizon=50.0):
    lc = critical_length(model, params)
    pop_cfg = replace(cfg, horizon=horizon)
    phases, offspring = estimate_offspring(model, params, lc, cfg)
    pi = washout_probability(model, params.settling_rate, lc)
    low = estimate_extinction_probability(model, params, lc / 4, initial, replicates, pop_cfg)
    high = estimate_extinction_probability(model, params, 4 * lc, initial, replicates, pop_cfg)
    return [
        _stat("benthic_phases_at_Lc", 1.0 / pi, phases),
        _stat("offspring_mean_at_Lc", offspring_mean(model, params, lc), offspring),
        _above("extinction_fraction_at_Lc/4", 0.9, low),
        _below("extinction_fraction_at_4Lc", 0.2, high),
    ]


def kesten_checks(cfg: SimConfig, replicates=200, diffusion=1.0, r=0.5, horizon=30.0, cap=1000):
    crit = kesten_critical_speed(diffusion, r)
    bbm_cfg = replace(cfg, horizon=horizon, population_cap=cap)
    fast = simulate_bbm_kesten(diffusion, r, -1.5 * crit, 1.0, replicates, bbm_cfg)
    slow = simulate_bbm_kesten(diffusion, r, -0.5 * crit, 2.0, replicates, bbm_cfg)
    return [
        _below("bbm_survival_fast_drift", 0.05, _fraction(fast)),
        _above("bbm_survival_slow_drift", 0.2, _fraction(slow)),
    ]


def _fraction(flags):
    return binomial_estimate(int(flags.sum()), flags.size)


def clone_checks(cfg: SimConfig, diffusion=1.0, v=1.0, r=0.5, x0=0.0, times=CLONE_TIMES):
    out = []
    for name in TEST_FUNCTIONS:
        for t in times:
            rep = clone_model_check(diffusion, v, r, name, x0, t, cfg)
            out.append(
                CheckResult(f"clone_mean[{name},t={t:g}]", rep.analytic, rep.mc_mean,
                            rep.mc_std_error, "4se", rep.mean_ok, rep.n)
            )
            out.append(
                CheckResult(f"martingale_gap[{name},t={t:g}]", 0.0, rep.martingale_gap,
                            rep.gap_std_error, "4se", rep.gap_ok, rep.n)
            )
    yule = estimate_yule_mean(r, 1.0, cfg)
    out.append(_stat("yule_mean[t=1]", math.exp(r), yule))
    return out


def run_validation(cfg: SimConfig, model=None, params=None, replicates=200):
    """Run the full suite; ``model``/``params`` replace the defaults of the model-specific checks."""
    cfg.check()
    cases = list(CANONICAL_CASES)
    if model is not None:
        lam1 = (params or DEFAULT_PARAMS).settling_rate
        cases.append(Case("user-model", model, 1.0, lam1))
    results = []
    for case in cases:
        results.extend(passage_checks(case, cfg))
    results.extend(threshold_checks(model or DEFAULT_MODEL, params or DEFAULT_PARAMS, cfg, replicates))
    results.extend(clone_checks(cfg))
    results.extend(kesten_checks(cfg, replicates))
    return results
