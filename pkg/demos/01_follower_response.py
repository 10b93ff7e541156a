"""
How herding pulls a follower toward the leader
==============================================

A follower who is less risk-averse than the leader would, on its own,
hold more of the risky asset. The herd coefficient penalises the gap, and
the optimal response turns out to be a constant multiple of the leader's
schedule. This script prints that multiple as herding grows.
"""

import numpy as np

from herdreg import DEFAULT_LEADER_ALPHA, DEFAULT_MARKET, leader_decision, solve_follower

m = DEFAULT_MARKET
lead = DEFAULT_LEADER_ALPHA

# the leader's holding grows at the risk-free rate up to the horizon
t = np.linspace(0, m.T, 6)
print("leader holding:", np.round(leader_decision(m, lead, t), 4))

# a bolder follower (alpha = 0.25) at increasing herd coefficients
print(f"\n{'eta':>8} {'mu':>10} {'ratio':>8} {'E x_T':>8} {'deviation':>10}")
for eta in [0.0, 0.002, 0.006, 0.01, 0.05, 1.0]:
    s = solve_follower(m, 0.25, lead, eta)
    print(f"{eta:8.3f} {s.mu:10.6f} {s.ratio:8.4f} {s.expected_terminal_fund:8.4f} {s.deviation:10.4f}")

# with no herding the ratio is the Merton ratio lead/alpha; strong herding
# drives it to 1, i.e. copying the leader
print("\nMerton ratio:", lead / 0.25)
