"""
Both parameter sweeps plus a Monte Carlo sanity check
=====================================================

Writes plot-ready CSV files to ./demo_output and prints the two markers:
the herd threshold at alpha = 0.25 and the risk coefficient at which
that threshold reaches eta = 0.01. The simulation is kept small here;
the acceptance suite runs the full 1e5 x 1e4 configuration.
"""

from pathlib import Path

from herdreg import ExperimentConfig, emit, run_case1, run_case2
from herdreg.harness import run_simulation

out = Path("demo_output")

cfg = ExperimentConfig(sweep_n=41)
rows, summary = run_case2(cfg)
emit(rows, "csv", out / "case2.csv")
print("threshold per kappa:", summary["threshold"])
print("regulated decision spread:", summary["regulated_decision_spread"])

rows, summary = run_case1(cfg)
emit(rows, "csv", out / "case1.csv")
print("critical alpha per kappa:", summary["critical_alpha"])

sim = run_simulation(ExperimentConfig(paths=20_000, steps=2000, seed=1))
for branch, rec in sim.items():
    print(f"{branch}: ratio {rec['ratio']:.4f}, MC fund {rec['mean_terminal_fund']:.4f} "
          f"vs {rec['closed_form_fund']:.4f} (z = {rec['fund_z']:+.2f})")
