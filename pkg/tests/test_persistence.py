import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from driftparadox.levy import LevyModel, NoJumps, brownian
from driftparadox.passage import washout_probability
from driftparadox.persistence import (
    AlwaysPersists,
    CriticalLength,
    InvalidParamsError,
    RegimeParams,
    asymptotic_critical_length,
    critical_curve,
    critical_length,
    critical_length_brownian_closed_form,
    lineage_extinction_probability,
    offspring_mean,
    persistence_verdict,
)

from _models import FAMILY_MODELS

P = RegimeParams(1.0, 2.0, 1.0)
# ln 2 / (sqrt(3) - 1), evaluated independently of the package
LC_BROWNIAN_UNIT = math.log(2) / (math.sqrt(3) - 1)


def test_verdict_examples():
    assert persistence_verdict(brownian(1, 1), RegimeParams(2, 1, 1)) == AlwaysPersists()
    verdict = persistence_verdict(brownian(1, 1), P)
    assert isinstance(verdict, CriticalLength) and not verdict.degenerate
    assert verdict.length == pytest.approx(LC_BROWNIAN_UNIT, rel=1e-14)
    assert verdict.length == pytest.approx(0.9468567, abs=1e-7)
    edge = persistence_verdict(brownian(1, 1), RegimeParams(1.5, 1.5, 1))
    assert edge == CriticalLength(0.0, degenerate=True)


def test_invalid_params_named():
    with pytest.raises(InvalidParamsError, match="settlingRate > 0"):
        persistence_verdict(brownian(1, 1), RegimeParams(1, 2, -1))
    with pytest.raises(InvalidParamsError, match="growthRate > 0"):
        persistence_verdict(brownian(1, 1), RegimeParams(0, 2, 1))


def test_closed_form_examples():
    assert critical_length_brownian_closed_form(1, 1, P) == pytest.approx(LC_BROWNIAN_UNIT, rel=1e-14)
    assert critical_length_brownian_closed_form(2, 0, RegimeParams(1, math.e, 1)) == 2.0
    q = RegimeParams(0.3, 1.7, 0.45)
    assert critical_length_brownian_closed_form(3.3, 0, q) == asymptotic_critical_length(3.3, q)
    with pytest.raises(InvalidParamsError):
        critical_length_brownian_closed_form(1, 1, RegimeParams(2, 1, 1))


def test_asymptotic_examples():
    assert asymptotic_critical_length(1, P) == pytest.approx(math.log(2), rel=1e-15)
    assert asymptotic_critical_length(2, P) == 2 * asymptotic_critical_length(1, P)
    assert asymptotic_critical_length(1, RegimeParams(1, 1, 1)) == 0.0
    with pytest.raises(InvalidParamsError):
        asymptotic_critical_length(1, RegimeParams(2, 1, 1))


@settings(max_examples=100, deadline=None)
@given(
    v=st.floats(0.05, 50),
    D=st.floats(0, 20),
    r=st.floats(0.01, 5),
    ratio=st.floats(1.001, 50),
    lam1=st.floats(0.01, 20),
)
def test_generic_solver_matches_closed_form(v, D, r, ratio, lam1):
    p = RegimeParams(r, r * ratio, lam1)
    lc = critical_length(brownian(v, D), p)
    assert lc == pytest.approx(critical_length_brownian_closed_form(v, D, p), rel=1e-10)


@pytest.mark.parametrize("model", FAMILY_MODELS)
def test_round_trip(model):
    rng = np.random.default_rng(3)
    for _ in range(100):
        r = rng.uniform(0.05, 3)
        p = RegimeParams(r, r * rng.uniform(1.01, 20), rng.uniform(0.05, 5))
        lc = critical_length(model, p)
        assert p.departure_rate * washout_probability(model, p.settling_rate, lc) == pytest.approx(
            p.growth_rate, rel=1e-10
        )


def test_monotone_in_parameters():
    m = brownian(1.0, 1.0)
    lcs = [critical_length(m.with_velocity(v), P) for v in np.geomspace(0.1, 100, 20)]
    assert np.all(np.diff(lcs) > 0)
    lcs = [critical_length(m, RegimeParams(1, 2, lam)) for lam in np.geomspace(0.1, 10, 20)]
    assert np.all(np.diff(lcs) < 0)
    lcs = [critical_length(m, RegimeParams(1, lam0, 1)) for lam0 in np.linspace(1.1, 10, 20)]
    assert np.all(np.diff(lcs) > 0)
    lcs = [critical_length(m, RegimeParams(r, 5, 1)) for r in np.linspace(0.1, 4.9, 20)]
    assert np.all(np.diff(lcs) < 0)


@pytest.mark.parametrize("D", [0.1, 1.0, 10.0])
def test_large_velocity_nullifies_dispersion(D):
    lam1 = P.settling_rate
    vs = np.geomspace(100 * math.sqrt(2 * D * lam1), 1e6, 50)
    worst = max(
        abs(critical_length(brownian(v, D), P) / critical_length(brownian(v, 0), P) - 1) for v in vs
    )
    assert worst <= 0.02


def test_curve_examples():
    grid = [0.5, 1, 2, 4, 8]
    rows = critical_curve(brownian(1, 1), P, grid)
    assert [r.v for r in rows] == grid
    lcs = [r.critical_length for r in rows]
    assert all(math.isfinite(x) for x in lcs) and np.all(np.diff(lcs) > 0)
    for row in rows:
        assert row.critical_length == pytest.approx(
            critical_length_brownian_closed_form(row.v, 1, P), rel=1e-10
        )
    flat = critical_curve(LevyModel(1, 0, NoJumps()), P, grid)
    assert all(r.critical_length == r.v * math.log(2) for r in flat)
    assert all(r.ratio == 1.0 for r in flat)
    (far,) = critical_curve(brownian(1, 1), P, [100.0])
    assert abs(far.critical_length / (100 * math.log(2)) - 1) < 0.01


def test_curve_records_bad_rows_without_aborting():
    rows = critical_curve(brownian(1, 1), P, [-1.0, 1.0])
    assert rows[0].error and rows[0].critical_length is None
    assert rows[1].error is None


def test_curve_is_worker_independent():
    grid = list(np.geomspace(0.1, 50, 30))
    assert critical_curve(brownian(1, 2), P, grid) == critical_curve(brownian(1, 2), P, grid, workers=4)


def test_offspring_mean_is_one_at_critical_length():
    for model in FAMILY_MODELS:
        assert offspring_mean(model, P, critical_length(model, P)) == pytest.approx(1.0, rel=1e-12)


def _extinction_by_iteration(pi, p):
    # fixed-point iteration on the offspring generating function, started at 0
    q = p.departure_rate / (p.growth_rate + p.departure_rate)
    z = 0.0
    for _ in range(200_000):
        g = q / (1 - (1 - q) * z)
        z_new = pi * g / (1 - (1 - pi) * g)
        if abs(z_new - z) < 1e-15:
            break
        z = z_new
    return z_new


@pytest.mark.parametrize("factor", [0.25, 0.5, 2.0, 4.0])
def test_lineage_extinction_matches_generating_function(factor):
    m = brownian(1, 1)
    L = factor * critical_length(m, P)
    pi = washout_probability(m, P.settling_rate, L)
    assert lineage_extinction_probability(m, P, L) == pytest.approx(_extinction_by_iteration(pi, P), abs=1e-9)
