import math
from dataclasses import replace

import numpy as np
import pytest

from driftparadox.simulate import (
    TEST_FUNCTIONS,
    SimConfig,
    clone_model_check,
    estimate_yule_mean,
    kesten_critical_speed,
    sample_yule,
    simulate_bbm_kesten,
)

CFG = SimConfig(seed=5, n_paths=100_000, horizon=30.0, population_cap=1000)


def test_kesten_fast_drift_dies_out():
    assert kesten_critical_speed(1.0, 0.5) == 1.0
    flags = simulate_bbm_kesten(1.0, 0.5, -1.5, 1.0, 200, CFG)
    assert flags.size == 200 and flags.mean() < 0.05


def test_kesten_slow_drift_can_persist():
    assert simulate_bbm_kesten(1.0, 0.5, -0.5, 2.0, 200, CFG).mean() > 0.2


def test_no_branching_single_particle_absorbed():
    assert not simulate_bbm_kesten(1.0, 1e-12, -1.5, 1.0, 100, CFG).any()


def test_kesten_seeded_and_thread_independent():
    a = simulate_bbm_kesten(1.0, 0.5, -0.5, 2.0, 50, CFG)
    b = simulate_bbm_kesten(1.0, 0.5, -0.5, 2.0, 50, replace(CFG, workers=4))
    assert np.array_equal(a, b)


def test_kesten_rejects_upstream_drift():
    with pytest.raises(ValueError):
        simulate_bbm_kesten(1.0, 0.5, 0.5, 1.0, 10, CFG)


@pytest.mark.parametrize("r,t", [(0.5, 1.0), (1.0, 2.0)])
def test_yule_mean(r, t):
    assert estimate_yule_mean(r, t, CFG).agrees_with(math.exp(r * t))
    assert sample_yule(r, t, 1000, np.random.default_rng(0)).min() >= 1


def test_clone_examples():
    rep = clone_model_check(1.0, 1.0, 0.5, "x", 0.0, 1.0, CFG)
    assert rep.analytic == pytest.approx(math.exp(0.5), rel=1e-15)
    assert rep.passed
    rep = clone_model_check(1.0, 0.0, 1.0, "x2", 0.0, 2.0, CFG)
    assert rep.analytic == pytest.approx(2 * math.exp(2), rel=1e-15)
    assert rep.passed
    rep = clone_model_check(1.0, 1.0, 0.5, "gauss", 0.4, 0.0, CFG)
    assert rep.mc_mean == math.exp(-0.16) and rep.martingale_gap == 0.0


def test_gaussian_expectation_by_quadrature():
    m, var = 0.7, 1.9
    x = np.linspace(m - 12 * math.sqrt(var), m + 12 * math.sqrt(var), 200_001)
    pdf = np.exp(-((x - m) ** 2) / (2 * var)) / math.sqrt(2 * math.pi * var)
    for fn in TEST_FUNCTIONS.values():
        assert fn.gaussian_mean(m, var) == pytest.approx(np.trapezoid(fn.f(x) * pdf, x), rel=1e-8)


@pytest.mark.parametrize("name", sorted(TEST_FUNCTIONS))
def test_generator_matches_finite_differences(name):
    fn = TEST_FUNCTIONS[name]
    x, h, D, v, r = np.array([-0.8, 0.3, 1.7]), 1e-4, 1.3, -0.4, 0.6
    d1 = (fn.f(x + h) - fn.f(x - h)) / (2 * h)
    d2 = (fn.f(x + h) - 2 * fn.f(x) + fn.f(x - h)) / h**2
    np.testing.assert_allclose(fn.generator(x, D, v, r), 0.5 * D * d2 + v * d1 + r * fn.f(x), rtol=1e-6, atol=1e-7)


@pytest.mark.parametrize("name", sorted(TEST_FUNCTIONS))
@pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
def test_clone_martingale(name, t):
    rep = clone_model_check(1.0, 1.0, 0.5, name, 0.0, t, CFG)
    assert rep.mean_ok, rep
    assert rep.gap_ok, rep
