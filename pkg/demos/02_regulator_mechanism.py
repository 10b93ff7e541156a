"""
The regulator's switch and the compensation that makes it acceptable
====================================================================

Regulation lowers the follower's effective herd coefficient, so a bold
follower invests more and the expected terminal fund rises. Intervening
costs kappa, so the regulator only acts once that gain exceeds kappa.
The follower is paid enough to accept the policy and to report its herd
coefficient truthfully.
"""

import numpy as np

from herdreg import (
    DEFAULT_LEADER_ALPHA,
    DEFAULT_MARKET,
    AgentProfiles,
    CostSpec,
    UtilitySpec,
    design_mechanism,
    economic_gain,
    verify_ic,
    verify_ir,
)

m = DEFAULT_MARKET
prof = AgentProfiles(DEFAULT_LEADER_ALPHA, 0.25)
utils = UtilitySpec.linear(0.9, 1.0)

# gain from full regulation at a few herd coefficients
for eta in [0.002, 0.006, 0.01, 0.02]:
    print(f"gain at eta={eta}: {economic_gain(m, prof, utils.policy, eta):.4f}")

mech = design_mechanism(m, prof, utils, CostSpec(0.5))
print("\nthreshold:", mech.threshold.value)
print("constant compensation chi:", mech.chi.value)
print("compensation step at the threshold:", round(mech.jump, 5))

print(f"\n{'eta':>7} {'q*':>7} {'c*':>8} {'pi*_T':>7} {'IR':>5} {'IC':>5}")
for eta in np.linspace(0.004, 0.01, 7):
    r = mech.evaluate(eta)
    ir, ic = verify_ir(mech, eta), verify_ic(mech, eta)
    print(f"{eta:7.4f} {r.policy:7.4f} {r.compensation:8.5f} {r.decision_T:7.4f} {ir.passed!s:>5} {ic.passed!s:>5}")

# halving the incentive part of the compensation invites under-reporting
bad = mech.perturbed(ic_scale=0.5)
ic = verify_ic(bad, 0.009)
print(f"\nhalved incentive term: best report {ic.best_report:.5f} instead of 0.009 (gain {ic.excess:.4f})")
