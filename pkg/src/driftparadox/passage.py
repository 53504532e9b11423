"""First-passage transforms for an upper level ``L``.

Because the process has no upward jumps it creeps over ``L``, and

    E exp(-s * T_L) = exp(-L * Phi(s)),

where ``Phi(s)`` is the unique positive root of ``psi(theta) = s``.  With
``eta = -Phi`` this is the familiar ``exp(L * eta(s))`` form.
"""

from __future__ import annotations

import math

import numpy as np

from .levy import _velocity, check, LevyModel

__all__ = [
    "RootFindingError",
    "inverse_laplace_exponent",
    "eta",
    "log_passage_time_transform",
    "passage_time_transform",
    "washout_probability",
    "mean_passage_time",
]

MAX_ITER = 200
REL_WIDTH = 1e-14
RESIDUAL_TOL = 1e-12


class RootFindingError(ArithmeticError):
    """The inverse exponent did not converge; indicates a defect, not bad input."""


def _psi(model: LevyModel, theta: float) -> float:
    return float(
        model.drift * theta
        + 0.5 * model.diffusion * theta * theta
        + model.jumps.transform_term(theta)
    )


def inverse_laplace_exponent(model: LevyModel, s: float) -> float:
    """Return ``Phi(s)``, the positive root of ``psi(theta) = s``.

    The root lies in ``(0, s / v]`` since ``psi(theta) >= v * theta`` by
    convexity.  False-position steps are taken inside that bracket, and a
    bisection step is forced whenever an iteration fails to halve it.
    """
    check(model)
    s = float(s)
    if not s >= 0:
        raise ValueError(f"transform parameter must be ≥ 0, got {s}")
    if s == 0:
        return 0.0
    v = _velocity(model)

    lo, hi = 0.0, s / v
    f_lo, f_hi = -s, _psi(model, hi) - s
    if f_hi <= 0:
        # psi(theta) >= v * theta, so this is only reached for linear psi
        return hi

    bisect = False
    for _ in range(MAX_ITER):
        width = hi - lo
        x = 0.5 * (lo + hi) if bisect else hi - f_hi * width / (f_hi - f_lo)
        if not lo < x < hi:
            x = 0.5 * (lo + hi)
            if not lo < x < hi:
                break
        fx = _psi(model, x) - s
        if fx == 0:
            lo = hi = x
            f_lo = f_hi = 0.0
            break
        if fx < 0:
            lo, f_lo = x, fx
        else:
            hi, f_hi = x, fx
        bisect = (hi - lo) > 0.5 * width
        if hi - lo <= REL_WIDTH * hi:
            break
    else:
        raise RootFindingError(f"no convergence after {MAX_ITER} iterations (s={s})")

    root, resid = (lo, f_lo) if abs(f_lo) < abs(f_hi) else (hi, f_hi)
    if abs(resid) > RESIDUAL_TOL * max(1.0, s) or not 0 < root <= s / v:
        raise RootFindingError(f"root {root!r} has residual {resid!r} (s={s})")
    return root


def eta(model: LevyModel, s: float) -> float:
    """The root of ``phi(theta) = -s`` in the cumulant convention; equals ``-Phi(s)``."""
    return -inverse_laplace_exponent(model, s)


def log_passage_time_transform(model: LevyModel, L: float, s: float) -> float:
    if not L >= 0:
        raise ValueError(f"boundary L must be ≥ 0, got {L}")
    if L == 0:
        return 0.0
    return -L * inverse_laplace_exponent(model, s)


def passage_time_transform(model: LevyModel, L: float, s: float) -> float:
    """``E exp(-s * T_L)``; underflows cleanly to 0 for very large ``L * Phi(s)``."""
    return math.exp(log_passage_time_transform(model, L, s))


def washout_probability(model: LevyModel, lambda1: float, L: float) -> float:
    """Probability that a drifting individual reaches ``L`` before settling.

    Settling happens at an independent exponential time with rate
    ``lambda1``, so this is the passage-time transform at ``s = lambda1``.
    """
    if not lambda1 > 0:
        raise ValueError(f"settling rate must be > 0, got {lambda1}")
    return passage_time_transform(model, L, lambda1)


def mean_passage_time(model: LevyModel, L: float) -> float:
    check(model)
    if not L >= 0:
        raise ValueError(f"boundary L must be ≥ 0, got {L}")
    return L / _velocity(model)


def inverse_laplace_exponent_array(model, s_values):
    """Vectorised convenience wrapper over :func:`inverse_laplace_exponent`."""
    return np.array([inverse_laplace_exponent(model, s) for s in np.ravel(s_values)]).reshape(
        np.shape(s_values)
    )
