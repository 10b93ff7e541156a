"""
Regulator side: economic gain, threshold, policy, compensation and the
IR / IC checks.

The regulated follower at true herd coefficient ``eta`` who reports ``h``
faces the effective coefficient ``eta - u(q(h))``. Under the optimal
(switch-like) policy q(h) is either 0 or h, so the follower's deviation
depends on (eta, h) only through that effective coefficient. The two
deviation sensitivities are therefore

    phi = d delta / d lam              (derivative in the true eta)
    psi = -u'(h) * d delta / d lam     (derivative in the report)

Compensation utility in the regulated region is

    jump + int_{threshold}^{eta} u(xi) psi(xi) dxi + chi

where ``jump`` is the follower's utility loss from switching the policy on
at the threshold. Without it, a follower just above a positive threshold
would gain by reporting a coefficient below the threshold. ``jump`` is zero
when the threshold is zero.
"""

from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import asdict, dataclass, replace

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq, minimize_scalar

from .follower import FollowerSolution, deviation_derivative, solve_follower
from .market import (
    AgentProfiles,
    CostSpec,
    DomainError,
    MarketParams,
    Utility,
    UtilitySpec,
    step,
)

QUAD_TOL = 1e-10
QUAD_LIMIT = 1 << 16
ROOT_TOL = 1e-12
GAIN_ETA_MAX = 10.0
GAIN_GRID_N = 256
CHI_ETA_MAX = 1e3
CHI_NODES = 64
FD_REL_STEP = 1e-6
IR_TOL = 1e-8
IC_TOL = 1e-8

NO_INTERVENTION = "no-intervention"


class QuadratureError(RuntimeError):
    def __init__(self, message: str, partial: float):
        super().__init__(message)
        self.partial = partial


def _quad(f, a: float, b: float, tol: float = QUAD_TOL, points=None) -> tuple[float, float]:
    if b <= a:
        return 0.0, 0.0
    pts = None if points is None else [p for p in points if a < p < b] or None
    value, err, info = quad(f, a, b, epsabs=tol, epsrel=tol, limit=200, points=pts, full_output=True)[:3]
    if info["neval"] > QUAD_LIMIT:
        raise QuadratureError(f"quadrature on [{a}, {b}] exceeded {QUAD_LIMIT} evaluations", value)
    if not math.isfinite(value):
        raise QuadratureError(f"quadrature on [{a}, {b}] returned {value}", value)
    return value, err


def _alphas(profiles: AgentProfiles) -> tuple[float, float]:
    return profiles.follower_alpha, profiles.leader_alpha


# ---------------------------------------------------------------------------
# economic gain and threshold


def economic_gain(m: MarketParams, profiles: AgentProfiles, u: Utility, eta: float) -> float:
    """Expected terminal fund with full policy minus without policy.

    Identically zero when the follower is at least as risk-averse as the
    leader, since the regulator then never intervenes.
    """
    if eta < 0:
        raise DomainError("eta must be nonnegative")
    alpha, lead = _alphas(profiles)
    if alpha >= lead or eta == 0:
        return 0.0
    reg = solve_follower(m, alpha, lead, eta - u(eta))
    unreg = solve_follower(m, alpha, lead, eta)
    return reg.expected_terminal_fund - unreg.expected_terminal_fund


@dataclass(frozen=True)
class GainCurve:
    etas: np.ndarray
    gains: np.ndarray
    monotone_until: float
    sup_gain: float

    @property
    def monotone(self) -> bool:
        return self.monotone_until >= self.etas[-1]


def gain_grid(eta_max: float = GAIN_ETA_MAX, grid_n: int = GAIN_GRID_N) -> np.ndarray:
    return np.geomspace(eta_max * 1e-8, eta_max, grid_n)


def gain_curve(m: MarketParams, profiles: AgentProfiles, u: Utility, etas) -> GainCurve:
    etas = np.asarray(etas, dtype=float)
    gains = np.array([economic_gain(m, profiles, u, e) for e in etas])
    return _curve(etas, gains)


@lru_cache(maxsize=512)
def _default_curve(m, alpha, leader_alpha, u, eta_max, grid_n) -> GainCurve:
    curve = gain_curve(m, AgentProfiles(leader_alpha, alpha), u, gain_grid(eta_max, grid_n))
    curve.etas.setflags(write=False)
    curve.gains.setflags(write=False)
    return curve


def _curve(etas, gains) -> GainCurve:
    drops = np.nonzero(np.diff(gains) < -1e-12)[0]
    monotone_until = etas[drops[0]] if len(drops) else etas[-1]
    return GainCurve(etas, gains, float(monotone_until), float(gains.max(initial=0.0)))


def _refine_max(fun, etas: np.ndarray, values: np.ndarray) -> tuple[float, float]:
    i = int(np.argmax(values))
    best_x, best_v = float(etas[i]), float(values[i])
    lo = etas[max(i - 1, 0)]
    hi = etas[min(i + 1, len(etas) - 1)]
    if hi > lo:
        res = minimize_scalar(lambda x: -fun(x), bounds=(lo, hi), method="bounded",
                              options={"xatol": 1e-12 * max(1.0, hi)})
        if -res.fun > best_v:
            best_x, best_v = float(res.x), float(-res.fun)
    return best_x, best_v


def gain_sup(
    m: MarketParams,
    profiles: AgentProfiles,
    u: Utility,
    eta_max: float = GAIN_ETA_MAX,
    grid_n: int = GAIN_GRID_N,
) -> float:
    """Supremum of the economic gain over (0, eta_max].

    Log-spaced scan followed by a bounded golden-section refinement around
    the best grid point.
    """
    if eta_max <= 0 or grid_n < 64:
        raise DomainError("need eta_max > 0 and grid_n >= 64")
    alpha, lead = _alphas(profiles)
    if alpha >= lead:
        return 0.0
    curve = _default_curve(m, alpha, lead, u, float(eta_max), int(grid_n))
    return _refine_max(lambda e: economic_gain(m, profiles, u, e), curve.etas, curve.gains)[1]


@dataclass(frozen=True)
class Threshold:
    """Herd coefficient above which the regulator intervenes.

    ``value`` is ``inf`` when the regulator never intervenes.
    """

    value: float
    kappa: float
    status: str
    gain_sup: float = 0.0
    monotone_until: float = math.inf
    tol: float = ROOT_TOL

    @property
    def intervenes(self) -> bool:
        return math.isfinite(self.value)


def threshold(
    m: MarketParams,
    profiles: AgentProfiles,
    u: Utility,
    kappa: float,
    eta_max: float = GAIN_ETA_MAX,
    grid_n: int = GAIN_GRID_N,
) -> Threshold:
    """Smallest eta at which the economic gain reaches ``kappa``."""
    if kappa < 0:
        raise DomainError("kappa must be nonnegative")
    alpha, lead = _alphas(profiles)
    if alpha >= lead:
        return Threshold(math.inf, kappa, NO_INTERVENTION)
    if kappa == 0:
        return Threshold(0.0, kappa, "zero-cost")

    curve = _default_curve(m, alpha, lead, u, float(eta_max), int(grid_n))
    g = lambda e: economic_gain(m, profiles, u, e)  # noqa: E731
    _, sup = _refine_max(g, curve.etas, curve.gains)
    if kappa > sup:
        return Threshold(math.inf, kappa, NO_INTERVENTION, sup, curve.monotone_until)

    # first crossing; on the monotone prefix it is the unique one
    above = np.nonzero(curve.gains >= kappa)[0]
    if len(above):
        i = int(above[0])
        lo = curve.etas[i - 1] if i > 0 else 0.0
        hi = curve.etas[i]
    else:
        # the sup is attained between grid points
        hi, _ = _refine_max(g, curve.etas, curve.gains)
        lo = curve.etas[np.searchsorted(curve.etas, hi) - 1]
    value = brentq(lambda e: g(e) - kappa, lo, hi, xtol=ROOT_TOL, rtol=4 * np.finfo(float).eps)
    status = "threshold" if value <= curve.monotone_until else "threshold-beyond-monotone-prefix"
    return Threshold(float(value), kappa, status, sup, curve.monotone_until)


def is_regulated(profiles: AgentProfiles, thr: Threshold, eta: float) -> bool:
    """Policy on iff alpha < leader alpha and eta is strictly above the threshold.

    Ties within the root tolerance go to the unregulated branch.
    """
    return bool(
        step(profiles.leader_alpha - profiles.follower_alpha)
        and thr.intervenes
        and eta - thr.value > thr.tol
    )


def optimal_policy(profiles: AgentProfiles, thr: Threshold, eta: float) -> float:
    return float(eta) if is_regulated(profiles, thr, eta) else 0.0


# ---------------------------------------------------------------------------
# deviations and sensitivities


def deviation_at(m: MarketParams, profiles: AgentProfiles, lam: float) -> float:
    alpha, lead = _alphas(profiles)
    return solve_follower(m, alpha, lead, lam).deviation


def _ddev_fd(m, profiles, lam, h=None):
    h = FD_REL_STEP * max(1.0, lam) if h is None else h
    if lam - h < 0:
        return (deviation_at(m, profiles, lam + h) - deviation_at(m, profiles, lam)) / h
    return (deviation_at(m, profiles, lam + h) - deviation_at(m, profiles, lam - h)) / (2 * h)


def sensitivities(
    m: MarketParams,
    profiles: AgentProfiles,
    u: Utility,
    eta: float,
    report: float | None = None,
    method: str = "analytic",
    h: float | None = None,
) -> tuple[float, float]:
    """(psi, phi) at true coefficient ``eta`` and report ``report`` (default truthful).

    ``method="fd"`` uses central differences with step ``1e-6 * max(1, lam)``
    (one-sided near lam = 0); ``"analytic"`` differentiates the fixed point
    implicitly.
    """
    report = eta if report is None else report
    alpha, lead = _alphas(profiles)
    lam = eta - u(report)
    if lam < 0:
        raise DomainError("effective herd coefficient is negative")
    if method == "analytic":
        ddev = deviation_derivative(m, alpha, lead, lam)
    elif method == "fd":
        ddev = _ddev_fd(m, profiles, lam, h)
    else:
        raise ValueError(f"unknown method {method!r}")
    phi = ddev
    psi = -u.derivative(report) * ddev
    return psi, phi


def _ic_integrand(m, profiles, u):
    def integrand(xi):
        return u(xi) * sensitivities(m, profiles, u, xi)[0]
    return integrand


def ic_compensation_integral(
    m: MarketParams,
    profiles: AgentProfiles,
    u: Utility,
    thr: Threshold,
    eta: float,
    tol: float = QUAD_TOL,
) -> float:
    """Integral of u(xi) psi(xi) from the threshold to ``eta``; 0 outside the regulated region."""
    if not is_regulated(profiles, thr, eta):
        return 0.0
    return _quad(_ic_integrand(m, profiles, u), thr.value, eta, tol)[0]


def ir_gap(m: MarketParams, profiles: AgentProfiles, u: Utility, eta: float) -> float:
    """Utility the follower loses when the full policy q = eta is applied.

    Unregulated objective minus regulated objective, both penalised with the
    true ``eta``; the IR constraint requires v(c) to cover it.
    """
    alpha, lead = _alphas(profiles)
    reg = solve_follower(m, alpha, lead, eta - u(eta))
    unreg = solve_follower(m, alpha, lead, eta)
    return (reg.mu - unreg.mu) / alpha + eta * (reg.deviation - unreg.deviation)


def threshold_jump(m: MarketParams, profiles: AgentProfiles, u: Utility, thr: Threshold) -> float:
    if not (profiles.risk_taking and thr.intervenes) or thr.value == 0:
        return 0.0
    return max(ir_gap(m, profiles, u, thr.value), 0.0)


# ---------------------------------------------------------------------------
# constant compensation utility


@dataclass(frozen=True)
class ChiResult:
    value: float
    rho_sup: float
    argsup: float
    offset: float
    quad_error: float
    tail_bound: float
    eta_max: float
    form: str = "rho = offset + int [dev_reg - dev_unreg + u*phi]"

    @property
    def error(self) -> float:
        return self.quad_error + self.tail_bound


def _rho_integrand(m, profiles, u):
    def integrand(xi):
        lam = xi - u(xi)
        phi = sensitivities(m, profiles, u, xi)[1]
        return deviation_at(m, profiles, lam) - deviation_at(m, profiles, xi) + u(xi) * phi
    return integrand


@dataclass(frozen=True)
class _RhoProfile:
    nodes: np.ndarray
    cumulative: np.ndarray  # integral of h from 0 to each node
    h: np.ndarray
    quad_error: float


@lru_cache(maxsize=512)
def _rho_profile(m, alpha, leader_alpha, u, eta_max, n_nodes, tol) -> _RhoProfile:
    profiles = AgentProfiles(leader_alpha, alpha)
    h = _rho_integrand(m, profiles, u)
    nodes = np.concatenate([[0.0], np.geomspace(eta_max * 1e-10, eta_max, n_nodes)])
    pieces, errs = zip(*(_quad(h, a, b, tol) for a, b in zip(nodes[:-1], nodes[1:])))
    cumulative = np.concatenate([[0.0], np.cumsum(pieces)])
    hv = np.array([h(x) for x in nodes])
    for arr in (nodes, cumulative, hv):
        arr.setflags(write=False)
    return _RhoProfile(nodes, cumulative, hv, float(sum(errs)))


def chi(
    m: MarketParams,
    profiles: AgentProfiles,
    u: Utility,
    thr: Threshold,
    eta_max: float = CHI_ETA_MAX,
    tol: float = QUAD_TOL,
    nodes: int = CHI_NODES,
    jump: float | None = None,
) -> ChiResult:
    """Constant compensation utility: ``max(0, sup rho)``.

    rho(eta) = f(threshold+) - jump + int_{threshold}^{eta} h(xi) dxi for eta
    above the threshold, rho = 0 below it, with
    h = dev(eta - u(eta)) - dev(eta) + u(eta) phi(eta). ``jump`` defaults to
    f(threshold+), so rho is the integral alone. The integral is truncated at
    ``eta_max``; h decays like eta^-2 so the neglected tail is bounded by
    roughly |h(eta_max)| * eta_max.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    if not (profiles.risk_taking and thr.intervenes) or thr.value >= eta_max:
        return ChiResult(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, eta_max)

    alpha, lead = _alphas(profiles)
    prof = _rho_profile(m, alpha, lead, u, float(eta_max), int(nodes), float(tol))
    h = _rho_integrand(m, profiles, u)
    start = thr.value
    f_start = threshold_jump(m, profiles, u, thr)
    jump = f_start if jump is None else jump
    offset = f_start - jump

    # integral of h from 0 to the threshold
    i0 = int(np.searchsorted(prof.nodes, start, side="right")) - 1
    head, err0 = _quad(h, prof.nodes[i0], start, tol)
    base = prof.cumulative[i0] + head

    # rho at the threshold, then at every node above it
    xs = np.concatenate([[start], prof.nodes[i0 + 1:]])
    hs = np.concatenate([[h(start)], prof.h[i0 + 1:]])
    rho = offset + np.concatenate([[0.0], prof.cumulative[i0 + 1:] - base])
    k = int(np.argmax(rho))
    best, argbest = float(rho[k]), float(xs[k])
    err = prof.quad_error + err0
    # interior maxima where h changes sign from + to -
    for j in np.nonzero((hs[:-1] > 0) & (hs[1:] < 0))[0]:
        x = brentq(h, xs[j], xs[j + 1], xtol=ROOT_TOL)
        part, e2 = _quad(h, xs[j], x, tol)
        err += e2
        if rho[j] + part > best:
            best, argbest = float(rho[j] + part), float(x)
    tail = float(abs(prof.h[-1]) * eta_max)
    return ChiResult(max(0.0, best), best, argbest, offset, err, tail, eta_max)


# ---------------------------------------------------------------------------
# the mechanism


@dataclass(frozen=True)
class IRCheck:
    passed: bool
    slack: float
    bound_slack: float


@dataclass(frozen=True)
class ICCheck:
    passed: bool
    best_report: float
    excess: float
    truthful_value: float


@dataclass(frozen=True)
class MechanismResult:
    eta: float
    alpha: float
    leader_alpha: float
    kappa: float
    threshold: float
    threshold_status: str
    policy: float
    psi: float
    phi: float
    ic_integral: float
    threshold_jump: float
    chi: float
    compensation: float
    regulated_ratio: float
    unregulated_ratio: float
    decision_T: float
    unregulated_decision_T: float
    potential_gain: float
    realized_gain: float
    regulator_objective: float
    unregulated_objective: float
    mu_residual: float
    chi_error: float
    monotone_until: float
    gain_sup: float
    chi_form: str

    def to_record(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Mechanism:
    """A designed (policy, compensation) pair for fixed agents and market.

    ``ic_scale`` and ``comp_scale`` multiply the IC integral and the whole
    compensation utility; both are 1 for the optimal mechanism and exist to
    build perturbed (non-optimal) mechanisms.
    """

    market: MarketParams
    profiles: AgentProfiles
    utilities: UtilitySpec
    cost: CostSpec
    threshold: Threshold
    chi: ChiResult
    jump: float
    ic_scale: float = 1.0
    comp_scale: float = 1.0

    @property
    def u(self) -> Utility:
        return self.utilities.policy

    @property
    def v(self) -> Utility:
        return self.utilities.compensation

    def perturbed(self, **changes) -> "Mechanism":
        return replace(self, **changes)

    def regulated(self, eta: float) -> bool:
        return is_regulated(self.profiles, self.threshold, eta)

    def policy(self, eta: float) -> float:
        return optimal_policy(self.profiles, self.threshold, eta)

    def ic_integral(self, eta: float) -> float:
        return ic_compensation_integral(self.market, self.profiles, self.u, self.threshold, eta)

    def _utility_from_integral(self, regulated: bool, integral: float) -> float:
        base = (self.jump + self.ic_scale * integral) if regulated else 0.0
        return self.comp_scale * (base + self.chi.value)

    def compensation_utility(self, eta: float) -> float:
        return self._utility_from_integral(self.regulated(eta), self.ic_integral(eta))

    def compensation_utilities(self, etas) -> np.ndarray:
        """Compensation utility at many points with one cumulative sweep of quadratures."""
        etas = np.asarray(etas, dtype=float)
        out = np.empty_like(etas)
        order = np.argsort(etas, kind="stable")
        integrand = _ic_integrand(self.market, self.profiles, self.u)
        acc, last = 0.0, self.threshold.value
        for idx in order:
            e = etas[idx]
            reg = self.regulated(e)
            if reg:
                acc += _quad(integrand, last, e)[0]
                last = e
            out[idx] = self._utility_from_integral(reg, acc if reg else 0.0)
        return out

    def compensation(self, eta: float) -> float:
        value = self.compensation_utility(eta)
        assert value >= -1e-15, "negative compensation utility"
        return self.v.inverse(max(value, 0.0))

    def effective_lambda(self, eta: float, report: float | None = None) -> float:
        report = eta if report is None else report
        return eta - self.u(self.policy(report))

    def follower(self, eta: float, report: float | None = None) -> FollowerSolution:
        alpha, lead = _alphas(self.profiles)
        return solve_follower(self.market, alpha, lead, self.effective_lambda(eta, report))

    def unregulated(self, eta: float) -> FollowerSolution:
        alpha, lead = _alphas(self.profiles)
        return solve_follower(self.market, alpha, lead, eta)

    def decision_ratio(self, eta: float) -> float:
        return self.follower(eta).ratio

    def evaluate(self, eta: float) -> MechanismResult:
        alpha, lead = _alphas(self.profiles)
        m = self.market
        reg = self.follower(eta)
        unreg = self.unregulated(eta)
        q = self.policy(eta)
        if self.regulated(eta):
            psi, phi = sensitivities(m, self.profiles, self.u, eta)
        else:
            psi = phi = 0.0
        leader_T = m.nu / (lead * m.sigma**2)
        return MechanismResult(
            eta=eta,
            alpha=alpha,
            leader_alpha=lead,
            kappa=self.cost.kappa,
            threshold=self.threshold.value,
            threshold_status=self.threshold.status,
            policy=q,
            psi=psi,
            phi=phi,
            ic_integral=self.ic_integral(eta),
            threshold_jump=self.jump,
            chi=self.chi.value,
            compensation=self.compensation(eta),
            regulated_ratio=reg.ratio,
            unregulated_ratio=unreg.ratio,
            decision_T=reg.ratio * leader_T,
            unregulated_decision_T=unreg.ratio * leader_T,
            potential_gain=economic_gain(m, self.profiles, self.u, eta),
            realized_gain=reg.expected_terminal_fund - unreg.expected_terminal_fund,
            regulator_objective=regulator_objective(self, eta),
            unregulated_objective=unreg.expected_terminal_fund,
            mu_residual=max(reg.fixed_point.residual, unreg.fixed_point.residual),
            chi_error=self.chi.error,
            monotone_until=self.threshold.monotone_until,
            gain_sup=self.threshold.gain_sup,
            chi_form=self.chi.form,
        )


def design_mechanism(
    m: MarketParams,
    profiles: AgentProfiles,
    utilities: UtilitySpec | None = None,
    cost: CostSpec | None = None,
    *,
    jump: bool = True,
    thr: Threshold | None = None,
    chi_eta_max: float = CHI_ETA_MAX,
) -> Mechanism:
    """Optimal switch-like policy with IC/IR compensation.

    With ``jump=False`` the compensation has no step at the threshold and
    ``chi`` absorbs the IR shortfall instead. That variant satisfies IR but
    not IC when the threshold is positive.
    """
    utilities = UtilitySpec() if utilities is None else utilities
    cost = CostSpec() if cost is None else cost
    u = utilities.policy
    thr = threshold(m, profiles, u, cost.kappa) if thr is None else thr
    j = threshold_jump(m, profiles, u, thr)
    chi_res = chi(m, profiles, u, thr, eta_max=chi_eta_max, jump=j if jump else 0.0)
    return Mechanism(m, profiles, utilities, cost, thr, chi_res, j if jump else 0.0)


def optimal_compensation(
    m: MarketParams,
    profiles: AgentProfiles,
    u: Utility,
    v: Utility,
    thr: Threshold,
    chi_value: float,
    eta: float,
    jump: float = 0.0,
) -> float:
    """v^-1(step(a_lead - a) step(eta - threshold) (jump + IC integral) + chi)."""
    base = 0.0
    if is_regulated(profiles, thr, eta):
        base = jump + ic_compensation_integral(m, profiles, u, thr, eta)
    arg = base + chi_value
    assert arg >= 0, "negative argument to inverse compensation utility"
    return v.inverse(arg)


def optimal_decision_ratio(m: MarketParams, profiles: AgentProfiles, u: Utility, thr: Threshold, eta: float) -> float:
    if eta < 0:
        raise DomainError("eta must be nonnegative")
    alpha, lead = _alphas(profiles)
    lam = eta - u(eta) if is_regulated(profiles, thr, eta) else eta
    return solve_follower(m, alpha, lead, lam).ratio


def regulator_objective(mech: Mechanism, eta: float) -> float:
    """Expected terminal fund under the mechanism minus the regulatory cost."""
    return mech.follower(eta).expected_terminal_fund - mech.cost(mech.policy(eta))


def truthful_objective(mech: Mechanism, eta: float, report: float, comp_utility: float | None = None) -> float:
    """Follower's payoff with true ``eta`` after reporting ``report``.

    Expected utility of the optimal response to the effective coefficient
    ``eta - u(q(report))``, penalised with the true ``eta``, plus v(c(report)).
    """
    sol = mech.follower(eta, report)
    if comp_utility is None:
        comp_utility = mech.compensation_utility(report)
    return sol.expected_utility - eta * sol.deviation + comp_utility


def verify_ir(mech: Mechanism, eta: float, tol: float = IR_TOL) -> IRCheck:
    reg = mech.follower(eta)
    unreg = mech.unregulated(eta)
    comp_u = mech.compensation_utility(eta)
    lhs = reg.expected_utility - eta * reg.deviation + comp_u
    rhs = unreg.expected_utility - eta * unreg.deviation
    slack = lhs - rhs
    if mech.regulated(eta):
        bound = max(ir_gap(mech.market, mech.profiles, mech.u, eta), 0.0)
    else:
        bound = 0.0
    bound_slack = mech.v.inverse(max(comp_u, 0.0)) - mech.v.inverse(bound)
    return IRCheck(slack >= -tol and bound_slack >= -tol, slack, bound_slack)


def verify_ic(mech: Mechanism, eta: float, reports=None, tol: float = IC_TOL) -> ICCheck:
    """Truthful reporting must maximise the follower's payoff over ``reports``.

    ``reports`` defaults to 101 points on [0, eta]; ``eta`` itself is always
    included.
    """
    reports = np.linspace(0.0, eta, 101) if reports is None else np.asarray(reports, dtype=float)
    if np.any(reports < 0) or np.any(reports > eta):
        raise DomainError("reports must lie in [0, eta]")
    reports = np.unique(np.append(reports, eta))
    comps = mech.compensation_utilities(reports)
    values = np.array([truthful_objective(mech, eta, h, c) for h, c in zip(reports, comps)])
    truthful = values[-1]
    i = int(np.argmax(values))
    excess = float(values[i] - truthful)
    return ICCheck(excess <= tol, float(reports[i]), excess, float(truthful))
