"""Acceptance criteria, each checked at its stated tolerance.

Every test records one PASS/FAIL line (shown in the pytest terminal
summary) and then asserts the same condition.
"""

import math
import time

import numpy as np
import pytest

import oracles
from acceptance_log import record
from herdreg import (
    DEFAULT_LEADER_ALPHA as LEAD,
    DEFAULT_MARKET as M,
    AgentProfiles,
    CostSpec,
    ExperimentConfig,
    SimConfig,
    UtilitySpec,
    design_mechanism,
    economic_gain,
    proportional_deviation,
    simulate_strategies,
    solve_follower,
    solve_mu,
    threshold,
    verify_ic,
    verify_ir,
)
from herdreg import fixed_point, mechanism
from herdreg.cli import main
from herdreg.harness import critical_alpha, run_case1, run_case2
from herdreg.mechanism import ir_gap

U = UtilitySpec.linear(0.9, 1.0)
RISKY = AgentProfiles(LEAD, 0.25)


def _cold_caches():
    fixed_point._solve.cache_clear()
    mechanism._default_curve.cache_clear()
    mechanism._rho_profile.cache_clear()


@pytest.fixture(scope="module")
def case1():
    return run_case1(ExperimentConfig())


@pytest.fixture(scope="module")
def case2():
    return run_case2(ExperimentConfig())


def test_c01_threshold_reproduction():
    _cold_caches()
    t0 = time.perf_counter()
    value = threshold(M, RISKY, U.policy, 0.5).value
    dt = time.perf_counter() - t0
    ok = 0.0055 <= value <= 0.0065 and dt < 5
    assert record(1, "threshold", ok, f"eta_breve={value:.7f} in [0.0055, 0.0065], {dt:.2f}s < 5s")


def test_c02_critical_alpha():
    _cold_caches()
    t0 = time.perf_counter()
    value = critical_alpha(ExperimentConfig(), eta=0.01, kappa=0.5)
    dt = time.perf_counter() - t0
    ok = 0.250 <= value <= 0.254 and dt < 30
    assert record(2, "critical alpha", ok, f"alpha_breve={value:.6f} in [0.250, 0.254], {dt:.2f}s < 30s")


def test_c03_fixed_point_quality():
    worst = 0.0
    for a in np.linspace(0.2, 0.35, 151):
        for lam in np.linspace(0.0, 0.01, 151):
            worst = max(worst, solve_mu(M, float(a), LEAD, float(lam)).residual)
    exp_mk = math.exp(-M.k)
    explicit = [solve_mu(M, 0.25, LEAD, 0.0).mu, solve_mu(M, LEAD, LEAD, 0.01).mu]
    gap = max(abs(x - exp_mk) for x in explicit)
    # the quoted 0.45906 is a rounded figure; exp(-k) = 0.4590727
    ok = worst <= 1e-12 and gap <= 1e-12 and abs(exp_mk - 0.45906) < 2e-5
    assert record(3, "fixed point", ok, f"max residual {worst:.1e} <= 1e-12 on 151x151 grid; explicit cases equal exp(-k)={exp_mk:.7f} to {gap:.1e}")


def test_c04_deviation_vs_quadrature():
    worst = 0.0
    for a in (0.2, 0.25, 0.3, 0.35):
        for lam in (0.0, 0.001, 0.004, 0.01, 0.05):
            r = solve_follower(M, a, LEAD, lam).ratio
            ref = oracles.deviation_simpson(r, n=1024)
            got = proportional_deviation(r, M, LEAD)
            worst = max(worst, 0.0 if ref == got == 0 else abs(got - ref) / abs(ref))
    assert record(4, "deviation vs Simpson", worst <= 1e-8, f"max relative error {worst:.1e} <= 1e-8 on 20 (alpha, lambda) points")


def test_c05_monte_carlo():
    t0 = time.perf_counter()
    ratios, alphas = [1.0, 1.2], [LEAD, 0.25]
    sims = simulate_strategies(M, LEAD, ratios, SimConfig(paths=100_000, steps=10_000, seed=2024), alphas=alphas)
    dt = time.perf_counter() - t0
    ok, parts = dt < 60, []
    for r, a, s in zip(ratios, alphas, sims):
        target = r * M.merton_fund(LEAD)
        util = -solve_mu(M, a, LEAD, 0.0).mu / a
        zf = (s.mean_terminal_fund - target) / s.std_error
        zu = (s.mean_utility - util) / s.utility_std_error
        ok &= abs(zf) <= 3 and abs(zu) <= 3
        parts.append(f"ratio {r}: fund z={zf:+.2f}, utility z={zu:+.2f}")
    assert record(5, "Monte Carlo", ok, "; ".join(parts) + f"; {dt:.1f}s < 60s")


def test_c06_gain_properties(case2):
    rows, summary = case2
    zero = max(abs(economic_gain(M, AgentProfiles(LEAD, a), U.policy, e))
               for a in (0.30, 0.32, 0.35) for e in np.linspace(0, 0.01, 151))
    eta_b = summary["threshold"]["0.5"]
    etas = [e for e in np.linspace(0, 0.01, 151) if e > eta_b]
    g = np.array([economic_gain(M, RISKY, U.policy, e) for e in etas])
    ok = zero <= 1e-12 and g.min() >= -1e-12 and np.diff(g).min() >= -1e-10
    assert record(6, "gain properties", ok,
                  f"|g| <= {zero:.0e} for cautious followers; min g {g.min():.3f}, min step {np.diff(g).min():.2e} on (eta_breve, 0.01]")


def test_c07_threshold_monotone_in_cost():
    vals = [threshold(M, RISKY, U.policy, k).value for k in (0.1, 0.2, 0.3, 0.4, 0.5)]
    ok = all(b >= a for a, b in zip(vals, vals[1:]))
    assert record(7, "threshold vs cost", ok, "eta_breve(kappa) = " + ", ".join(f"{v:.6f}" for v in vals))


def test_c08_ir_ic_suites():
    fails, worst_ir, worst_ic = 0, math.inf, -math.inf
    for kappa in (0.0, 0.5):
        mech = design_mechanism(M, RISKY, U, CostSpec(kappa))
        lo = mech.threshold.value
        for e in np.linspace(lo, 0.01, 52)[1:]:
            ir, ic = verify_ir(mech, e), verify_ic(mech, e)
            fails += (not ir.passed) + (not ic.passed)
            worst_ir, worst_ic = min(worst_ir, ir.slack), max(worst_ic, ic.excess)
    mech = design_mechanism(M, RISKY, U, CostSpec(0.5))
    grid = np.linspace(mech.threshold.value, 0.01, 52)[1:]
    zeroed = mech.perturbed(comp_scale=0.0)
    halved = mech.perturbed(ic_scale=0.5)
    zero_fails = any(not verify_ir(zeroed, e).passed for e in grid)
    half_fails = any(not verify_ic(halved, e).passed for e in grid)
    ok = fails == 0 and zero_fails and half_fails
    assert record(8, "IR/IC", ok,
                  f"{fails} failures on 2x51 points (min IR slack {worst_ir:.1e}, max IC excess {worst_ic:.1e}); "
                  f"negative controls fail: zeroed={zero_fails}, halved={half_fails}")


def test_c09_switch_structure(case1, case2):
    rows = case1[0] + case2[0]
    bad = 0
    for r in rows:
        regulated = r.alpha < LEAD and r.eta - r.threshold > 1e-12
        bad += r.policy not in (0.0, r.eta) or (r.policy == r.eta and r.eta > 0) != regulated
        bad += regulated != (r.region in ("i", "iii") and not (r.axis == "alpha" and r.region == "i"))
    assert record(9, "switch structure", bad == 0, f"{bad} mismatches over {len(rows)} rows")


def test_c10_case2_shape(case1, case2):
    rows, summary = case2
    k05 = [r for r in rows if r.kappa == 0.5]
    unreg = np.array([r.unregulated_decision_T for r in k05])
    strictly = bool(np.all(np.diff(unreg) < 0))
    reg = [r.decision_T for r in k05 if r.policy > 0]
    spread = (max(reg) - min(reg)) / np.mean(reg)
    order = all(r.regulated_ratio >= r.unregulated_ratio - 1e-15 for r in case1[0] + rows if r.alpha < LEAD)
    ok = strictly and spread < 0.02 and order
    assert record(10, "Case 2 shape", ok,
                  f"unregulated strictly decreasing={strictly}; regulated spread {100 * spread:.2f}% < 2%; "
                  f"regulated >= unregulated ratio={order}")


def test_c11_chi_consistency(case2):
    worst, chis = math.inf, []
    for kappa in (0.0, 0.5):
        mech = design_mechanism(M, RISKY, U, CostSpec(kappa))
        chis.append(mech.chi.value)
        for e in np.linspace(0, 0.01, 151):
            bound = max(ir_gap(M, RISKY, U.policy, e), 0.0) if mech.regulated(e) else 0.0
            worst = min(worst, mech.compensation(e) - U.compensation.inverse(bound))
    comp_chi = max(U.compensation.inverse(c) for c in chis)
    ok = min(chis) >= 0 and worst >= -1e-12 and comp_chi <= 1e-6
    assert record(11, "chi consistency", ok,
                  f"chi={chis}; min c* - v^-1(f) = {worst:.2e}; v^-1(chi) = {comp_chi:.1e} <= 1e-6")


def test_c12_determinism(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("follower_alpha = 0.25\nsweep_n = 31\nseed = 11\n")
    outs = []
    for name in ("first", "second"):
        for cmd in ("case2", "verify"):
            assert main([cmd, "--config", str(cfg), "--out", str(tmp_path / name)]) == 0
        outs.append([(tmp_path / name / f).read_bytes() for f in ("case2.csv", "verify.csv")])
    sim = [simulate_strategies(M, LEAD, [1.1], SimConfig(paths=2000, steps=1000, seed=11)) for _ in range(2)]
    ok = outs[0] == outs[1] and sim[0] == sim[1]
    assert record(12, "determinism", ok, "case2.csv and verify.csv byte-identical across runs; Monte Carlo repeatable")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
