import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from herdreg import (
    DomainError,
    deviation_derivative,
    proportional_deviation,
    proportional_expected_utility,
    solve_follower,
)
from herdreg.follower import (
    decision_at_time,
    follower_objective,
    proportional_objective,
    ratio_derivative,
)

GRID_20 = [(a, lam) for a in (0.2, 0.25, 0.3, 0.35) for lam in (0.0, 0.001, 0.004, 0.01, 0.05)]


@pytest.mark.parametrize("alpha,lam", GRID_20)
def test_closed_form_deviation_matches_simpson(market, lead, alpha, lam):
    sol = solve_follower(market, alpha, lead, lam)
    ref = oracles.deviation_simpson(sol.ratio)
    if ref == 0:
        assert sol.deviation == 0
    else:
        assert sol.deviation == pytest.approx(ref, rel=1e-8)


def test_leader_is_own_follower(market, lead):
    sol = solve_follower(market, lead, lead, 0.01)
    assert sol.ratio == 1.0 and sol.deviation == 0.0
    assert sol.expected_terminal_fund == pytest.approx(5.190311418685121, rel=1e-12)
    assert sol.expected_utility == pytest.approx(-math.exp(-market.k) / lead, rel=1e-12)


def test_no_herding_gives_merton_ratio(market, lead):
    sol = solve_follower(market, 0.25, lead, 0.0)
    assert sol.ratio == pytest.approx(lead / 0.25, rel=1e-15)


@pytest.mark.parametrize("alpha,lam", [(0.25, 0.0), (0.25, 0.006), (0.2, 0.01), (0.35, 0.003), (0.25, 1.0)])
def test_expected_utility_is_gaussian_average(market, lead, alpha, lam):
    sol = solve_follower(market, alpha, lead, lam)
    assert sol.expected_utility == pytest.approx(oracles.gaussian_expected_utility(sol.ratio, alpha), rel=1e-9)
    assert sol.expected_utility == pytest.approx(proportional_expected_utility(sol.ratio, market, alpha, lead), rel=1e-12)


@pytest.mark.parametrize("alpha,lam", [(0.25, 0.0), (0.25, 0.006), (0.2, 0.01), (0.35, 0.003)])
def test_ratio_maximises_objective_over_proportional_strategies(market, lead, alpha, lam):
    sol = solve_follower(market, alpha, lead, lam)
    best = proportional_objective(sol.ratio, market, alpha, lead, lam)
    assert best == pytest.approx(follower_objective(market, alpha, lead, lam, lam), rel=1e-14)
    grid = sol.ratio + np.linspace(-0.2, 0.2, 4001)
    values = [proportional_objective(x, market, alpha, lead, lam) for x in grid]
    assert max(values) <= best + 1e-12
    assert abs(grid[int(np.argmax(values))] - sol.ratio) <= 1e-4 + 1e-12


@given(alpha=st.floats(0.05, 0.29), lam=st.floats(0.0, 1.0), dl=st.floats(1e-6, 0.5))
def test_ratio_moves_toward_leader_as_herding_grows(market, lead, alpha, lam, dl):
    a, b = solve_follower(market, alpha, lead, lam), solve_follower(market, alpha, lead, lam + dl)
    assert 1.0 <= b.ratio <= a.ratio <= lead / alpha * (1 + 1e-14)
    assert b.deviation <= a.deviation


@pytest.mark.parametrize("alpha,lam", [(0.25, 0.001), (0.25, 0.006), (0.2, 0.02), (0.35, 0.005)])
def test_deviation_derivative_matches_central_difference(market, lead, alpha, lam):
    h = 1e-7
    fd = (solve_follower(market, alpha, lead, lam + h).deviation
          - solve_follower(market, alpha, lead, lam - h).deviation) / (2 * h)
    assert deviation_derivative(market, alpha, lead, lam) == pytest.approx(fd, rel=1e-6)
    rfd = (solve_follower(market, alpha, lead, lam + h).ratio
           - solve_follower(market, alpha, lead, lam - h).ratio) / (2 * h)
    assert ratio_derivative(market, alpha, lead, lam) == pytest.approx(rfd, rel=1e-6)


def test_decision_path_is_constant_multiple(market, lead):
    sol = solve_follower(market, 0.25, lead, 0.004)
    t = np.linspace(0, market.T, 5)
    d = decision_at_time(sol, market, lead, t)
    assert np.allclose(d / oracles.leader(t), sol.ratio, rtol=1e-14)


def test_objective_rejects_negative_penalty(market, lead):
    with pytest.raises(DomainError):
        follower_objective(market, 0.25, lead, -0.1, 0.0)


def test_proportional_deviation_zero_at_unit_ratio(market, lead):
    assert proportional_deviation(1.0, market, lead) == 0.0
