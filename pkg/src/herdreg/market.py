"""
Market constants, agent profiles, utility/cost specifications and the
leader's Merton decision.

The leader invests

    pi_t = nu / (alpha_leader * sigma^2) * exp(r (t - T))

in the risky asset. Followers are described relative to this schedule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import brentq


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


@dataclass(frozen=True)
class MarketParams:
    """Risk-free rate, excess return, volatility and horizon."""

    r: float
    nu: float
    sigma: float
    T: float

    @property
    def k(self) -> float:
        """nu^2 T / (2 sigma^2), the exponent scale of the fixed-point map."""
        return self.nu**2 * self.T / (2.0 * self.sigma**2)

    def merton_fund(self, leader_alpha: float) -> float:
        """Expected terminal fund of the leader, nu^2 T / (alpha sigma^2)."""
        return self.nu**2 * self.T / (leader_alpha * self.sigma**2)


@dataclass(frozen=True)
class AgentProfiles:
    leader_alpha: float
    follower_alpha: float
    eta: float = 0.0

    @property
    def risk_taking(self) -> bool:
        """True when the follower is strictly less risk-averse than the leader."""
        return self.follower_alpha < self.leader_alpha


class Utility:
    """Monotone map R+ -> R+ with derivative and (optionally) inverse.

    ``inverse`` falls back to bracketed root finding on ``[0, c_max]`` when
    no analytic inverse is supplied.
    """

    def __init__(
        self,
        func: Callable[[float], float],
        derivative: Callable[[float], float],
        inverse: Callable[[float], float] | None = None,
        c_max: float = 1e6,
        name: str = "custom",
    ):
        self._func = func
        self._derivative = derivative
        self._inverse = inverse
        self.c_max = c_max
        self.name = name

    def __call__(self, x: float) -> float:
        return self._func(x)

    def derivative(self, x: float) -> float:
        return self._derivative(x)

    def inverse(self, y: float) -> float:
        if y < 0:
            raise DomainError(f"inverse utility undefined for negative argument {y!r}")
        if self._inverse is not None:
            return self._inverse(y)
        if y == 0:
            return 0.0
        hi = self.c_max
        if self._func(hi) < y:
            raise DomainError(f"utility does not reach {y!r} on [0, {hi!r}]")
        return brentq(lambda c: self._func(c) - y, 0.0, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps)

    def __repr__(self) -> str:
        return f"Utility({self.name})"


class LinearUtility(Utility):
    """x -> slope * x."""

    def __init__(self, slope: float):
        if slope <= 0:
            raise DomainError("linear utility slope must be positive")
        self.slope = float(slope)
        super().__init__(
            func=lambda x: self.slope * x,
            derivative=lambda x: self.slope,
            inverse=lambda y: y / self.slope,
            name=f"linear({self.slope:g})",
        )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LinearUtility) and other.slope == self.slope

    def __hash__(self) -> int:
        return hash(("linear", self.slope))


@dataclass(frozen=True)
class UtilitySpec:
    """Policy utility u (herd reduction) and compensation utility v."""

    policy: Utility = field(default_factory=lambda: LinearUtility(0.9))
    compensation: Utility = field(default_factory=lambda: LinearUtility(1.0))

    @classmethod
    def linear(cls, u_slope: float = 0.9, v_slope: float = 1.0) -> "UtilitySpec":
        return cls(LinearUtility(u_slope), LinearUtility(v_slope))


@dataclass(frozen=True)
class CostSpec:
    kappa: float = 0.0

    def __call__(self, q: float) -> float:
        return self.kappa * step(q)


DEFAULT_MARKET = MarketParams(r=0.04, nu=0.03, sigma=0.17, T=50.0)
DEFAULT_LEADER_ALPHA = 0.3


def step(x: float) -> int:
    """Unit step with step(0) = 0."""
    return 1 if x > 0 else 0


def leader_decision(m: MarketParams, leader_alpha: float, t):
    """Amount the leader holds in the risky asset at time ``t``.

    Accepts a scalar or an array of times in ``[0, T]``.
    """
    if leader_alpha <= 0:
        raise DomainError("leader_alpha must be positive")
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0) or np.any(t_arr > m.T):
        raise DomainError(f"time outside [0, {m.T}]")
    out = m.nu / (leader_alpha * m.sigma**2) * np.exp(m.r * (t_arr - m.T))
    return float(out) if out.ndim == 0 else out


def _below_identity(u: Utility, grid=None) -> bool:
    if isinstance(u, LinearUtility):
        return u.slope < 1.0
    grid = np.geomspace(1e-8, 1e3, 200) if grid is None else grid
    return all(u(q) < q for q in grid)


def validate(
    m: MarketParams,
    profiles: AgentProfiles | None = None,
    utilities: UtilitySpec | None = None,
    cost: CostSpec | None = None,
) -> list[str]:
    """Return a list of violated invariants; an empty list means valid."""
    problems = []
    for name in ("r", "nu", "sigma", "T"):
        value = getattr(m, name)
        if not (math.isfinite(value) and value > 0):
            problems.append(f"{name} must be positive")
    if not problems and not (math.isfinite(m.k) and m.k > 0):
        problems.append("nu^2 T / (2 sigma^2) must be finite and positive")

    if profiles is not None:
        if not profiles.leader_alpha > 0:
            problems.append("leader_alpha must be positive")
        if not profiles.follower_alpha > 0:
            problems.append("follower_alpha must be positive")
        if not profiles.eta >= 0:
            problems.append("eta must be nonnegative")

    if utilities is not None:
        u, v = utilities.policy, utilities.compensation
        if u(0.0) != 0:
            problems.append("u(0)=0 required")
        if v(0.0) != 0:
            problems.append("v(0)=0 required")
        grid = np.geomspace(1e-8, 1e3, 200)
        if np.any(np.diff([u(q) for q in grid]) < 0):
            problems.append("u must be nondecreasing")
        if np.any(np.diff([v(c) for c in grid]) < 0):
            problems.append("v must be nondecreasing")
        if not _below_identity(u, grid):
            problems.append("u(q)<q required")

    if cost is not None and not cost.kappa >= 0:
        problems.append("kappa must be nonnegative")
    return problems
