"""Flat ``key = value`` run configuration with ``[model]``, ``[regime]`` and ``[sim]`` sections.

Example::

    [model]
    family = exponential   ; brownian | deterministic | exponential | fixed | discrete
    v = 1.5                ; effective velocity (or give the linear drift as `drift`)
    diffusion = 0.5
    jump_rate = 1
    jump_mean = 0.5        ; exponential family; `jump_size` for fixed
    ; jumps = 0.5:1, 2:0.25   discrete family, size:rate pairs

    [regime]
    r = 1
    lambda0 = 2
    lambda1 = 1

    [sim]
    seed = 7
    n = 100000
    dt = 0.05
    horizon = 1000
    cap = 100000
    workers = 1

Command-line flags override file values.  ``DRIFTPARADOX_SEED`` replaces the
built-in default seed when neither the file nor the flags set one.
"""

from __future__ import annotations

import configparser
import os

from .levy import DiscreteJumps, ExponentialJumps, FixedJumps, LevyModel, NoJumps
from .persistence import RegimeParams
from .simulate import SimConfig

SEED_ENV = "DRIFTPARADOX_SEED"
FAMILIES = ("brownian", "deterministic", "exponential", "fixed", "discrete")

SECTIONS = {
    "model": ("family", "v", "drift", "diffusion", "jump_rate", "jump_mean", "jump_size", "jumps"),
    "regime": ("r", "lambda0", "lambda1"),
    "sim": ("seed", "n", "dt", "horizon", "cap", "workers"),
}


class ConfigError(ValueError):
    pass


def read_config_file(path) -> dict:
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    if not parser.read(path, encoding="utf-8"):
        raise ConfigError(f"cannot read config file {path}")
    values = {}
    for section in parser.sections():
        if section not in SECTIONS:
            raise ConfigError(f"unknown config section [{section}]")
        for key, raw in parser[section].items():
            if key not in SECTIONS[section]:
                raise ConfigError(f"unknown key {key!r} in [{section}]")
            values[key] = raw.strip()
    return values


def merge(file_values: dict, flag_values: dict) -> dict:
    merged = dict(file_values)
    merged.update({k: v for k, v in flag_values.items() if v is not None})
    return merged


def _float(values, key, default=None):
    raw = values.get(key, default)
    if raw is None:
        raise ConfigError(f"missing required value {key!r}")
    try:
        return float(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be a number, got {raw!r}") from None


def _int(values, key, default):
    raw = values.get(key, default)
    try:
        return int(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be an integer, got {raw!r}") from None


def parse_atoms(text: str):
    atoms = []
    for item in str(text).split(","):
        item = item.strip()
        if not item:
            continue
        try:
            size, rate = item.split(":")
            atoms.append((float(size), float(rate)))
        except ValueError:
            raise ConfigError(f"jumps must be size:rate pairs, got {item!r}") from None
    if not atoms:
        raise ConfigError("discrete family needs at least one size:rate pair")
    return tuple(atoms)


def build_model(values: dict) -> LevyModel:
    family = values.get("family", "brownian")
    if family not in FAMILIES:
        raise ConfigError(f"unknown model family {family!r} (choose from {', '.join(FAMILIES)})")
    if family in ("brownian", "deterministic"):
        jumps = NoJumps()
    elif family == "exponential":
        jumps = ExponentialJumps(_float(values, "jump_rate"), _float(values, "jump_mean"))
    elif family == "fixed":
        jumps = FixedJumps(_float(values, "jump_rate"), _float(values, "jump_size"))
    else:
        jumps = DiscreteJumps(parse_atoms(values.get("jumps", "")))
    diffusion = 0.0 if family == "deterministic" else _float(values, "diffusion", 0.0)

    if values.get("v") is not None and values.get("drift") is not None:
        raise ConfigError("give either v (effective velocity) or drift, not both")
    if values.get("drift") is not None:
        return LevyModel(_float(values, "drift"), diffusion, jumps)
    return LevyModel(0.0, diffusion, jumps).with_velocity(_float(values, "v"))


def build_params(values: dict) -> RegimeParams:
    return RegimeParams(_float(values, "r"), _float(values, "lambda0"), _float(values, "lambda1"))


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return SimConfig.seed
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def build_sim(values: dict) -> SimConfig:
    cfg = SimConfig(
        seed=_int(values, "seed", default_seed()),
        n_paths=_int(values, "n", SimConfig.n_paths),
        dt=_float(values, "dt", SimConfig.dt),
        horizon=_float(values, "horizon", SimConfig.horizon),
        population_cap=_int(values, "cap", SimConfig.population_cap),
        workers=_int(values, "workers", SimConfig.workers),
    )
    problems = cfg.violations()
    if problems:
        raise ConfigError("; ".join(problems))
    return cfg
