from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

BLOCK_SIZE = 8192

# stream tags keep engines statistically independent under one seed
PASSAGE, WASHOUT, POPULATION, OFFSPRING, BBM, CLONE, YULE = range(1, 8)


@dataclass(frozen=True)
class SimConfig:
    """Seed and sizes shared by all Monte Carlo engines.

    ``dt`` is the longest segment a jump-model path is advanced in one go and
    ``horizon`` the time after which a path or population is censored.
    ``workers`` only changes wall-clock time, never the output.
    """

    seed: int = 20050601
    n_paths: int = 100_000
    dt: float = 0.05
    horizon: float = 1000.0
    population_cap: int = 100_000
    workers: int = 1

    def violations(self):
        out = []
        if not (isinstance(self.seed, (int, np.integer)) and 0 <= self.seed < 2**64):
            out.append("seed must be a 64-bit unsigned integer")
        if not self.n_paths >= 1:
            out.append("nPaths ≥ 1 required")
        if not self.dt > 0:
            out.append("dt > 0 required")
        if not self.horizon > 0:
            out.append("horizon > 0 required")
        if not self.population_cap >= 1:
            out.append("populationCap ≥ 1 required")
        if not self.workers >= 1:
            out.append("workers ≥ 1 required")
        return out

    def check(self):
        problems = self.violations()
        if problems:
            raise ValueError("; ".join(problems))
        return self


@dataclass(frozen=True)
class EstimateWithError:
    mean: float
    std_error: float
    n: int
    censored: int = 0

    def z_score(self, expected):
        diff = self.mean - expected
        if self.std_error == 0:
            return 0.0 if diff == 0 else math.copysign(math.inf, diff)
        return diff / self.std_error

    def agrees_with(self, expected, k=4.0):
        return abs(self.mean - expected) <= k * self.std_error


def sample_mean(values, n=None) -> EstimateWithError:
    values = np.asarray(values, dtype=float)
    count = values.size
    se = float(values.std(ddof=1) / math.sqrt(count)) if count > 1 else 0.0
    return EstimateWithError(float(values.mean()), se, count if n is None else n)


def binomial_estimate(successes, n) -> EstimateWithError:
    p = successes / n
    return EstimateWithError(p, math.sqrt(p * (1.0 - p) / n), n)


def stream(seed, tag, index) -> np.random.Generator:
    """Independent generator for substream ``(tag, index)`` of ``seed``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(tag, index))))


def _pmap(fn, items, workers):
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(fn, items))
    return [fn(i) for i in items]


def map_blocks(fn, n, cfg: SimConfig, tag):
    """Run ``fn(rng, size)`` over fixed-size blocks and concatenate in block order.

    Block boundaries depend only on ``n``, so results do not depend on
    ``cfg.workers``.
    """
    starts = range(0, n, BLOCK_SIZE)

    def run(b):
        size = min(BLOCK_SIZE, n - starts[b])
        return fn(stream(cfg.seed, tag, b), size)

    parts = _pmap(run, range(len(starts)), cfg.workers)
    if parts and isinstance(parts[0], tuple):
        return tuple(np.concatenate(cols) for cols in zip(*parts))
    return np.concatenate(parts) if parts else np.empty(0)


def map_replicates(fn, count, cfg: SimConfig, tag):
    """``[fn(rng_i) for i in range(count)]`` with one substream per replicate."""
    return _pmap(lambda i: fn(stream(cfg.seed, tag, i)), range(count), cfg.workers)
