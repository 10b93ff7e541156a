"""
Follower's optimal response for a given effective herd coefficient.

Every case (regulated, unregulated, misreported) differs only in the
effective herd coefficient ``lam`` fed to the fixed point:

* unregulated:           lam = eta
* regulated, truthful:   lam = eta - u(q(eta))
* regulated, report h:   lam = eta - u(q(h))

The optimal strategy is a constant multiple (``ratio``) of the leader's
decision, which makes the deviation and the expected terminal fund closed
form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .fixed_point import FixedPointSolution, dmu_dlambda, solve_mu
from .market import DomainError, MarketParams, leader_decision


@dataclass(frozen=True)
class FollowerSolution:
    lam: float
    mu: float
    ratio: float
    deviation: float
    expected_terminal_fund: float
    expected_utility: float
    fixed_point: FixedPointSolution | None = None


def decision_ratio(m: MarketParams, alpha: float, leader_alpha: float, lam: float, mu: float) -> float:
    s2mu = m.sigma**2 * mu
    return (leader_alpha * s2mu + lam) / (alpha * s2mu + lam)


def deviation_scale(m: MarketParams, leader_alpha: float) -> float:
    """nu^2 T / (alpha_leader^2 sigma^4)."""
    return m.nu**2 * m.T / (leader_alpha**2 * m.sigma**4)


def proportional_deviation(ratio: float, m: MarketParams, leader_alpha: float) -> float:
    """Discounted squared gap to the leader for ``pi_t = ratio * leader_t``.

    ``exp(2r(T-t)) * leader_t**2`` does not depend on t, so the time integral
    collapses to ``T`` times a constant.
    """
    return 0.5 * (ratio - 1.0) ** 2 * deviation_scale(m, leader_alpha)


def proportional_expected_utility(ratio: float, m: MarketParams, alpha: float, leader_alpha: float) -> float:
    """E[-exp(-alpha x_T)/alpha] for a proportional strategy.

    x_T is Gaussian with mean ``ratio * nu^2 T / (alpha_leader sigma^2)`` and
    variance ``ratio^2 nu^2 T / (alpha_leader^2 sigma^2)``.
    """
    b = alpha * ratio / leader_alpha
    return -math.exp(m.k * ((b - 1.0) ** 2 - 1.0)) / alpha


def solve_follower(m: MarketParams, alpha: float, leader_alpha: float, lam: float) -> FollowerSolution:
    fp = solve_mu(m, alpha, leader_alpha, lam)
    ratio = decision_ratio(m, alpha, leader_alpha, lam, fp.mu)
    return FollowerSolution(
        lam=lam,
        mu=fp.mu,
        ratio=ratio,
        deviation=proportional_deviation(ratio, m, leader_alpha),
        expected_terminal_fund=ratio * m.merton_fund(leader_alpha),
        expected_utility=-fp.mu / alpha,
        fixed_point=fp,
    )


def decision_at_time(solution: FollowerSolution, m: MarketParams, leader_alpha: float, t):
    return solution.ratio * leader_decision(m, leader_alpha, t)


def ratio_derivative(m: MarketParams, alpha: float, leader_alpha: float, lam: float, mu: float | None = None) -> float:
    """d ratio / d lam along the solution curve."""
    if mu is None:
        mu = solve_mu(m, alpha, leader_alpha, lam).mu
    dmu = dmu_dlambda(m, alpha, leader_alpha, lam, mu)
    s2 = m.sigma**2
    return s2 * (alpha - leader_alpha) * (mu - lam * dmu) / (alpha * s2 * mu + lam) ** 2


def deviation_derivative(m: MarketParams, alpha: float, leader_alpha: float, lam: float) -> float:
    """d deviation / d lam of the optimal response (nonpositive)."""
    sol = solve_follower(m, alpha, leader_alpha, lam)
    dratio = ratio_derivative(m, alpha, leader_alpha, lam, sol.mu)
    return deviation_scale(m, leader_alpha) * (sol.ratio - 1.0) * dratio


def follower_objective(
    m: MarketParams,
    alpha: float,
    leader_alpha: float,
    penalty: float,
    lam: float,
    comp_gain: float = 0.0,
) -> float:
    """E phi(x_T) - penalty * deviation + comp_gain at the optimum for ``lam``.

    ``penalty`` is the weight on the deviation (``eta - u(q)`` in the
    regulated problem, ``eta`` without regulation) and ``comp_gain`` is v(c).
    """
    if penalty < 0:
        raise DomainError("penalty weight must be nonnegative")
    sol = solve_follower(m, alpha, leader_alpha, lam)
    return sol.expected_utility - penalty * sol.deviation + comp_gain


def proportional_objective(
    ratio: float,
    m: MarketParams,
    alpha: float,
    leader_alpha: float,
    penalty: float,
    comp_gain: float = 0.0,
) -> float:
    """Same objective evaluated at an arbitrary proportional strategy."""
    return (
        proportional_expected_utility(ratio, m, alpha, leader_alpha)
        - penalty * proportional_deviation(ratio, m, leader_alpha)
        + comp_gain
    )
