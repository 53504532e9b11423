"""Critical domain length for the benthic/drift regime-switching model.

Benthic individuals reproduce at rate ``r`` and leave for the drift at rate
``lambda0``; drifting individuals settle at rate ``lambda1`` unless they are
washed out at ``L`` first.  The population is critical when
``r = lambda0 * washout_probability(lambda1, L)``.  Since the wash-out
probability is ``exp(-L * Phi(lambda1))`` this gives

    L_c = log(lambda0 / r) / Phi(lambda1).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .levy import LevyModel, check, effective_velocity, validate
from .passage import inverse_laplace_exponent, washout_probability

__all__ = [
    "RegimeParams",
    "InvalidParamsError",
    "AlwaysPersists",
    "CriticalLength",
    "persistence_verdict",
    "critical_length",
    "round_trip_residual",
    "critical_length_brownian_closed_form",
    "asymptotic_critical_length",
    "CurveRow",
    "critical_curve",
    "offspring_mean",
    "lineage_extinction_probability",
]


class InvalidParamsError(ValueError):
    pass


@dataclass(frozen=True)
class RegimeParams:
    growth_rate: float
    departure_rate: float
    settling_rate: float

    def violations(self):
        out = []
        for label, value in (
            ("growthRate", self.growth_rate),
            ("departureRate", self.departure_rate),
            ("settlingRate", self.settling_rate),
        ):
            if not value > 0:
                out.append(f"{label} > 0 violated (got {value})")
        return out

    def check(self):
        problems = self.violations()
        if problems:
            raise InvalidParamsError("; ".join(problems))
        return self


@dataclass(frozen=True)
class AlwaysPersists:
    """Growth outpaces departures (``lambda0 < r``) at every domain length."""

    def __str__(self):
        return "AlwaysPersists"


@dataclass(frozen=True)
class CriticalLength:
    length: float
    degenerate: bool = False

    def __str__(self):
        tag = " (degenerate: lambda0 == r)" if self.degenerate else ""
        return f"CriticalLength({self.length!r}){tag}"


PersistenceVerdict = AlwaysPersists | CriticalLength


def _log_ratio(p):
    ratio = math.log(p.departure_rate / p.growth_rate)
    if ratio < 0:
        raise InvalidParamsError(
            "critical length requires departureRate ≥ growthRate "
            f"(got lambda0={p.departure_rate}, r={p.growth_rate})"
        )
    return ratio


def persistence_verdict(model: LevyModel, p: RegimeParams) -> PersistenceVerdict:
    check(model)
    p.check()
    if p.departure_rate < p.growth_rate:
        return AlwaysPersists()
    if p.departure_rate == p.growth_rate:
        return CriticalLength(0.0, degenerate=True)
    length = _log_ratio(p) / inverse_laplace_exponent(model, p.settling_rate)
    return CriticalLength(length)


def critical_length(model: LevyModel, p: RegimeParams) -> float:
    """``L_c`` as a float; raises when the population persists at every length."""
    verdict = persistence_verdict(model, p)
    if isinstance(verdict, AlwaysPersists):
        raise InvalidParamsError("lambda0 < r: the population persists at every length")
    return verdict.length


def round_trip_residual(model: LevyModel, p: RegimeParams, length: float) -> float:
    """Relative mismatch ``|lambda0 * pi(L) - r| / r`` at a candidate length."""
    pi = washout_probability(model, p.settling_rate, length)
    return abs(p.departure_rate * pi - p.growth_rate) / p.growth_rate


def critical_length_brownian_closed_form(v: float, diffusion: float, p: RegimeParams) -> float:
    """Closed form for drifted Brownian motion.

    ``L = log(lambda0/r) / (2 lambda1) * (sqrt(1 + 2 D lambda1 / v**2) + 1) * v``,
    which collapses to ``v * log(lambda0/r) / lambda1`` when ``D = 0``.
    """
    p.check()
    if not v > 0 or not diffusion >= 0:
        raise InvalidParamsError(f"need v > 0 and D ≥ 0 (got v={v}, D={diffusion})")
    log_ratio = _log_ratio(p)
    if diffusion == 0:
        return asymptotic_critical_length(v, p)
    root = math.sqrt(1.0 + 2.0 * diffusion * p.settling_rate / (v * v))
    return log_ratio / (2.0 * p.settling_rate) * (root + 1.0) * v


def asymptotic_critical_length(v: float, p: RegimeParams) -> float:
    p.check()
    if not v > 0:
        raise InvalidParamsError(f"need v > 0 (got {v})")
    return v * _log_ratio(p) / p.settling_rate


@dataclass(frozen=True)
class CurveRow:
    v: float
    critical_length: float | None
    asymptotic: float | None
    ratio: float | None
    error: str | None = None

    def as_dict(self):
        return {
            "v": self.v,
            "L_c": self.critical_length,
            "L_c_asymptotic": self.asymptotic,
            "ratio": self.ratio,
        }


def _curve_row(base, p, v):
    model = base.with_velocity(v)
    problems = validate(model) + p.violations()
    if problems:
        return CurveRow(v, None, None, None, "; ".join(problems))
    try:
        lc = critical_length(model, p)
        asym = asymptotic_critical_length(effective_velocity(model), p)
    except (ValueError, ArithmeticError) as exc:
        return CurveRow(v, None, None, None, str(exc))
    ratio = lc / asym if asym > 0 else math.nan
    return CurveRow(v, lc, asym, ratio)


def critical_curve(base: LevyModel, p: RegimeParams, grid, workers: int = 1) -> list[CurveRow]:
    """Critical length over a grid of effective velocities.

    Each grid speed replaces the linear drift of ``base`` so that the
    effective velocity equals the grid value; diffusion and jumps are kept.
    Failures are stored per row and never abort the curve.
    """
    grid = [float(v) for v in grid]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(lambda v: _curve_row(base, p, v), grid))
    return [_curve_row(base, p, v) for v in grid]


def offspring_mean(model: LevyModel, p: RegimeParams, L: float) -> float:
    """Mean number of benthic offspring per individual over its whole life.

    Each benthic phase produces ``r / lambda0`` births on average and the
    number of phases is geometric with success probability ``pi``.
    """
    pi = washout_probability(model, p.settling_rate, L)
    return p.growth_rate / p.departure_rate / pi


def lineage_extinction_probability(model: LevyModel, p: RegimeParams, L: float) -> float:
    """Ultimate extinction probability of one benthic lineage.

    The offspring generating function is linear fractional,
    ``G(z) = pi q / (1 - (1 - pi) q - (1 - q) z)`` with
    ``q = lambda0 / (r + lambda0)``, whose fixed points are 1 and
    ``lambda0 * pi / r``.  The smaller one is the extinction probability.
    """
    pi = washout_probability(model, p.settling_rate, L)
    return min(1.0, p.departure_rate * pi / p.growth_rate)
