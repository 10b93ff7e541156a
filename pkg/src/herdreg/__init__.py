"""Regulator-leader-follower herding game: follower response, optimal
regulation mechanism, Monte Carlo checks and experiment sweeps."""

from .fixed_point import FixedPointSolution, SolverError, dmu_dlambda, solve_mu
from .follower import (
    FollowerSolution,
    decision_ratio,
    deviation_derivative,
    proportional_deviation,
    proportional_expected_utility,
    solve_follower,
)
from .harness import ExperimentConfig, SweepRow, emit, load_config, run_case1, run_case2, run_point
from .market import (
    DEFAULT_LEADER_ALPHA,
    DEFAULT_MARKET,
    AgentProfiles,
    CostSpec,
    DomainError,
    LinearUtility,
    MarketParams,
    Utility,
    UtilitySpec,
    leader_decision,
    validate,
)
from .mechanism import (
    ChiResult,
    Mechanism,
    MechanismResult,
    QuadratureError,
    Threshold,
    chi,
    design_mechanism,
    economic_gain,
    gain_sup,
    optimal_compensation,
    optimal_policy,
    sensitivities,
    threshold,
    verify_ic,
    verify_ir,
)
from .montecarlo import SimConfig, SimResult, simulate_strategies, simulate_terminal_fund, weak_convergence

__version__ = "0.1.0"
