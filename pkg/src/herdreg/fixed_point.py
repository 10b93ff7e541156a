"""
Scalar fixed point for the follower's integral parameter.

For an effective herd coefficient ``lam`` the parameter ``mu`` solves

    mu = exp{ (A lam^2 / (a mu + lam)^2 - 1) k },

with A = (alpha/alpha_leader - 1)^2, a = alpha sigma^2 and
k = nu^2 T / (2 sigma^2). The right-hand side is bounded between
exp(-k) and exp((A - 1) k), which gives an analytic bracket.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from .market import DomainError, MarketParams

log = logging.getLogger(__name__)

TOL = 1e-12
MAX_ITER = 200
SCAN_POINTS = 64


class SolverError(RuntimeError):
    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (last residual {residual:.3e})")
        self.residual = residual


@dataclass(frozen=True)
class FixedPointSolution:
    mu: float
    residual: float
    iterations: int
    method: str = "bisection"
    roots: tuple[float, ...] = ()

    @property
    def unique(self) -> bool:
        return len(self.roots) <= 1


def fixed_point_map(mu, m: MarketParams, alpha: float, leader_alpha: float, lam: float):
    """Right-hand side F(mu); vectorised over ``mu``."""
    A = (alpha / leader_alpha - 1.0) ** 2
    frac = lam / (alpha * m.sigma**2 * np.asarray(mu, dtype=float) + lam) if lam > 0 else 0.0
    return np.exp((A * frac**2 - 1.0) * m.k)


def mu_bracket(m: MarketParams, alpha: float, leader_alpha: float) -> tuple[float, float]:
    A = (alpha / leader_alpha - 1.0) ** 2
    return math.exp(-m.k), math.exp((A - 1.0) * m.k)


def _damped(F, mu0: float, tol: float, max_iter: int, beta: float = 0.5):
    mu = mu0
    for it in range(1, max_iter + 1):
        nxt = (1.0 - beta) * mu + beta * F(mu)
        if abs(nxt - mu) < tol * 1e-3:
            mu = nxt
            break
        mu = nxt
    return mu, it


@lru_cache(maxsize=65536)
def _solve(r, nu, sigma, T, alpha, leader_alpha, lam, tol, max_iter) -> FixedPointSolution:
    m = MarketParams(r, nu, sigma, T)
    lo, hi = mu_bracket(m, alpha, leader_alpha)
    if lam == 0.0 or alpha == leader_alpha:
        mu = lo
        return FixedPointSolution(mu, 0.0, 0, "explicit", (mu,))

    A = (alpha / leader_alpha - 1.0) ** 2
    a = alpha * sigma**2
    k = m.k

    def F(x):
        s = lam / (a * x + lam)
        return math.exp((A * s * s - 1.0) * k)

    def G(x):
        return x - F(x)

    # uniqueness is not guaranteed analytically; scan for extra sign changes
    grid = np.linspace(lo, hi, SCAN_POINTS)
    g = grid - fixed_point_map(grid, m, alpha, leader_alpha, lam)
    changes = np.nonzero(np.signbit(g[:-1]) != np.signbit(g[1:]))[0]

    roots = []
    iterations = 0
    if len(changes) == 0:
        # endpoints are analytic bounds, so this only happens through rounding
        mu, iterations = _damped(F, lo, tol, max_iter)
        method = "damped"
        roots = [mu]
    else:
        method = "bisection"
        for i in changes:
            root, info = brentq(
                G, grid[i], grid[i + 1], xtol=1e-300, rtol=4 * np.finfo(float).eps,
                maxiter=max_iter, full_output=True,
            )
            iterations += info.iterations
            roots.append(root)
        if len(roots) > 1:
            log.warning("fixed point not unique at lam=%g: roots %s; returning the smallest", lam, roots)
        mu = min(roots)

    residual = abs(G(mu))
    if not residual <= tol:
        raise SolverError(f"fixed point did not converge at lam={lam!r}", residual)
    return FixedPointSolution(mu, residual, iterations, method, tuple(sorted(roots)))


def solve_mu(
    m: MarketParams,
    alpha: float,
    leader_alpha: float,
    lam: float,
    tol: float = TOL,
    max_iter: int = MAX_ITER,
) -> FixedPointSolution:
    """Solve the fixed-point equation for ``mu`` at effective herd coefficient ``lam``.

    Parameters
    ----------
    m : market constants
    alpha, leader_alpha : follower and leader risk coefficients
    lam : effective herd coefficient, must be nonnegative

    Returns
    -------
    FixedPointSolution
        ``mu`` with ``|mu - F(mu)| <= tol``. If the grid scan finds more than
        one root they are all listed in ``roots`` and the smallest is returned.
    """
    if lam < 0:
        raise DomainError(f"effective herd coefficient must be nonnegative, got {lam!r}")
    if alpha <= 0 or leader_alpha <= 0:
        raise DomainError("risk coefficients must be positive")
    return _solve(m.r, m.nu, m.sigma, m.T, float(alpha), float(leader_alpha), float(lam), tol, max_iter)


def dmu_dlambda(m: MarketParams, alpha: float, leader_alpha: float, lam: float, mu: float) -> float:
    """Implicit derivative d mu / d lam at a solution (lam, mu)."""
    A = (alpha / leader_alpha - 1.0) ** 2
    if A == 0.0 or lam == 0.0:
        return 0.0
    a = alpha * m.sigma**2
    den = a * mu + lam
    s = lam / den
    # F_lam and F_mu share the factor 2 k A s mu / den^2
    common = 2.0 * m.k * A * s * mu / den**2
    F_lam = common * a * mu
    F_mu = -common * a * lam
    denom = 1.0 - F_mu
    assert denom > 0, "degenerate implicit derivative"
    return F_lam / denom
