"""
Euler-Maruyama simulation of the fund SDE

    dx = (r x + nu pi_t) dt + sigma pi_t dz,   x_0 = 0,

under a proportional strategy ``pi_t = ratio * leader_t``.

Paths are split into fixed-size blocks, each with its own child seed, so
results depend only on (seed, paths, steps) and not on how blocks are
scheduled.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .market import DomainError, MarketParams, leader_decision

BLOCK = 1 << 14


@dataclass(frozen=True)
class SimConfig:
    paths: int = 100_000
    steps: int = 10_000
    seed: int = 0
    antithetic: bool = False

    def __post_init__(self):
        if self.paths < 1000 or self.steps < 1000:
            raise DomainError("need paths >= 1000 and steps >= 1000")
        if self.antithetic and self.paths % 2:
            raise DomainError("antithetic sampling needs an even path count")


@dataclass(frozen=True)
class SimResult:
    mean_terminal_fund: float
    std_error: float
    mean_utility: float
    utility_std_error: float
    paths: int
    steps: int

    def to_record(self) -> dict:
        return asdict(self)


def _block_sizes(paths: int) -> list[int]:
    full, rest = divmod(paths, BLOCK)
    return [BLOCK] * full + ([rest] if rest else [])


def _euler_weights(m, leader_alpha, ratio, steps, level):
    """Weights of the fine-grid increments in x_T for a coarse Euler grid.

    The Euler update x <- x (1 + r dt) + pi_i (nu dt + sigma dW_i) is affine
    in x, so from x_0 = 0

        x_N = sum_i pi_i (1 + r dt)^(N-1-i) (nu dt + sigma dW_i).

    Level ``j`` uses steps / 2**j steps whose increments are sums of
    2**j consecutive fine increments. Returns (drift, weights) where
    ``weights`` has one entry per fine step.
    """
    width = 1 << level
    n = steps // width
    dt = m.T / n
    t = np.arange(n) * dt
    pi = ratio * leader_decision(m, leader_alpha, t)
    a = pi * (1.0 + m.r * dt) ** np.arange(n - 1, -1, -1)
    drift = math.fsum(a * m.nu * dt)
    return drift, np.repeat(a, width)


def _simulate_block(weights, rng, n, steps, dt, sigma, antithetic, chunk=256):
    """Terminal funds for ``n`` paths, one row per weight vector."""
    drifts = np.array([d for d, _ in weights])
    W = np.stack([w for _, w in weights]) * (sigma * math.sqrt(dt))
    half = n // 2 if antithetic else n
    acc = np.zeros((len(weights), n))
    for lo in range(0, steps, chunk):
        hi = min(lo + chunk, steps)
        z = rng.standard_normal((hi - lo, half))
        if antithetic:
            z = np.concatenate([z, -z], axis=1)
        acc += W[:, lo:hi] @ z
    return acc + drifts[:, None]


def _reduce(samples: list[np.ndarray]) -> tuple[float, float]:
    n = sum(len(s) for s in samples)
    mean = math.fsum(math.fsum(s) for s in samples) / n
    ss = math.fsum(math.fsum((s - mean) ** 2) for s in samples)
    return mean, math.sqrt(ss / (n - 1) / n)


def simulate_strategies(
    m: MarketParams,
    leader_alpha: float,
    ratios,
    cfg: SimConfig = SimConfig(),
    alphas=None,
) -> list[SimResult]:
    """Simulate several proportional strategies on the same Brownian paths.

    ``alphas`` gives the utility risk coefficient per strategy (defaults to
    the leader's).
    """
    ratios = [float(x) for x in ratios]
    if not all(math.isfinite(x) for x in ratios):
        raise DomainError("ratio must be finite")
    alphas = [leader_alpha] * len(ratios) if alphas is None else list(alphas)
    weights = [_euler_weights(m, leader_alpha, x, cfg.steps, 0) for x in ratios]
    dt = m.T / cfg.steps
    sizes = _block_sizes(cfg.paths)
    seeds = np.random.SeedSequence(cfg.seed).spawn(len(sizes))
    funds = [[] for _ in ratios]
    utils = [[] for _ in ratios]
    for n, ss in zip(sizes, seeds):
        rng = np.random.default_rng(ss)
        x = _simulate_block(weights, rng, n, cfg.steps, dt, m.sigma, cfg.antithetic)
        for j, a in enumerate(alphas):
            funds[j].append(x[j])
            utils[j].append(-np.exp(-a * x[j]) / a)
    out = []
    for f, u in zip(funds, utils):
        mean, se = _reduce(f)
        umean, use = _reduce(u)
        out.append(SimResult(mean, se, umean, use, cfg.paths, cfg.steps))
    return out


def simulate_terminal_fund(
    m: MarketParams,
    leader_alpha: float,
    ratio: float,
    cfg: SimConfig = SimConfig(),
    alpha: float | None = None,
) -> SimResult:
    """Monte Carlo mean of x_T and of the CARA utility -exp(-alpha x_T)/alpha.

    ``alpha`` is the risk coefficient used for the utility (defaults to the
    leader's).
    """
    return simulate_strategies(m, leader_alpha, [ratio], cfg, None if alpha is None else [alpha])[0]


def weak_convergence(
    m: MarketParams,
    leader_alpha: float,
    ratio: float,
    cfg: SimConfig,
    levels: int = 3,
) -> list[tuple[int, float]]:
    """Mean terminal fund at ``steps``, ``steps/2``, ... on shared Brownian paths.

    Returns ``[(steps, mean), ...]`` from finest to coarsest. Sharing the
    noise removes most sampling error from differences between levels, so
    the discretisation bias becomes visible.
    """
    if cfg.steps % (1 << (levels - 1)):
        raise DomainError("steps must be divisible by 2**(levels-1)")
    weights = [_euler_weights(m, leader_alpha, ratio, cfg.steps, j) for j in range(levels)]
    dt = m.T / cfg.steps
    seeds = np.random.SeedSequence(cfg.seed).spawn(len(_block_sizes(cfg.paths)))
    per_level = [[] for _ in range(levels)]
    for n, ss in zip(_block_sizes(cfg.paths), seeds):
        rng = np.random.default_rng(ss)
        x = _simulate_block(weights, rng, n, cfg.steps, dt, m.sigma, cfg.antithetic)
        for j in range(levels):
            per_level[j].append(x[j])
    return [(cfg.steps >> j, _reduce(per_level[j])[0]) for j in range(levels)]
