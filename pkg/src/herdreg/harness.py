"""
Experiment harness: configuration files, single-point solves, the two
sweeps (risk coefficient at fixed herding, herding at fixed risk
coefficient) and CSV/JSON output.
"""

from __future__ import annotations

import csv
import json
import math
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

import numpy as np

from .follower import solve_follower
from .market import (
    AgentProfiles,
    CostSpec,
    DomainError,
    MarketParams,
    UtilitySpec,
    validate,
)
from .mechanism import (
    Mechanism,
    design_mechanism,
    threshold,
    verify_ic,
    verify_ir,
)
from .montecarlo import SimConfig, simulate_strategies

SIG_DIGITS = 12


@dataclass(frozen=True)
class ExperimentConfig:
    r: float = 0.04
    nu: float = 0.03
    sigma: float = 0.17
    T: float = 50.0
    leader_alpha: float = 0.3
    follower_alpha: float = 0.25
    eta: float = 0.01
    kappa: float = 0.5
    u_slope: float = 0.9
    v_slope: float = 1.0
    sweep_axis: str | None = None
    sweep_min: float | None = None
    sweep_max: float | None = None
    sweep_n: int = 151
    kappa_list: tuple[float, ...] = (0.0, 0.5)
    seed: int = 0
    paths: int = 100_000
    steps: int = 10_000

    @property
    def market(self) -> MarketParams:
        return MarketParams(self.r, self.nu, self.sigma, self.T)

    @property
    def profiles(self) -> AgentProfiles:
        return AgentProfiles(self.leader_alpha, self.follower_alpha, self.eta)

    @property
    def utilities(self) -> UtilitySpec:
        return UtilitySpec.linear(self.u_slope, self.v_slope)

    @property
    def cost(self) -> CostSpec:
        return CostSpec(self.kappa)

    def sweep(self, axis: str, lo: float, hi: float) -> np.ndarray:
        """Sweep values for ``axis``, honouring overrides when the axis matches."""
        if self.sweep_axis == axis:
            lo = lo if self.sweep_min is None else self.sweep_min
            hi = hi if self.sweep_max is None else self.sweep_max
        if not (hi > lo) or self.sweep_n < 2:
            raise DomainError(f"empty sweep range [{lo}, {hi}]")
        return np.linspace(lo, hi, self.sweep_n)

    def check(self) -> None:
        problems = validate(self.market, self.profiles, self.utilities, self.cost)
        problems += [f"kappa_list entry {k} must be nonnegative" for k in self.kappa_list if k < 0]
        if self.sweep_axis not in (None, "alpha", "eta"):
            problems.append("sweep_axis must be 'alpha' or 'eta'")
        if problems:
            raise DomainError("; ".join(problems))


_FIELD_TYPES = {f.name: f.type for f in fields(ExperimentConfig)}


def _coerce(key: str, raw: str):
    typ = _FIELD_TYPES[key]
    raw = raw.strip()
    if key == "kappa_list":
        return tuple(float(x) for x in raw.replace(",", " ").split())
    if key == "sweep_axis":
        return raw or None
    if typ.startswith("int"):
        return int(raw)
    return float(raw)


def parse_config(text: str) -> dict:
    """Parse ``key = value`` lines (``:`` also accepted, ``#`` starts a comment)."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        sep = "=" if "=" in line else ":"
        if sep not in line:
            raise DomainError(f"line {lineno}: expected key = value")
        key, raw = (s.strip() for s in line.split(sep, 1))
        if key not in _FIELD_TYPES:
            raise DomainError(f"line {lineno}: unknown key {key!r}")
        values[key] = _coerce(key, raw)
    return values


def load_config(path: str | os.PathLike | None = None, **overrides) -> ExperimentConfig:
    values = parse_config(Path(path).read_text()) if path else {}
    values.update({k: v for k, v in overrides.items() if v is not None})
    cfg = ExperimentConfig(**values)
    cfg.check()
    return cfg


# ---------------------------------------------------------------------------
# runs


def mechanism_for(cfg: ExperimentConfig, alpha: float | None = None, kappa: float | None = None) -> Mechanism:
    cfg = replace(
        cfg,
        follower_alpha=cfg.follower_alpha if alpha is None else float(alpha),
        kappa=cfg.kappa if kappa is None else float(kappa),
    )
    return design_mechanism(cfg.market, cfg.profiles, cfg.utilities, cfg.cost)


def run_point(cfg: ExperimentConfig, simulate: bool = False) -> dict:
    """Everything at one (alpha, eta, kappa): both follower branches and the mechanism."""
    cfg.check()
    m = cfg.market
    mech = mechanism_for(cfg)
    reg = mech.follower(cfg.eta)
    unreg = solve_follower(m, cfg.follower_alpha, cfg.leader_alpha, cfg.eta)
    record = {
        "config": _config_record(cfg),
        "unregulated": _follower_record(unreg),
        "regulated": _follower_record(reg),
        "mechanism": mech.evaluate(cfg.eta).to_record(),
    }
    if simulate:
        record["simulation"] = run_simulation(cfg, mech)
    return record


def run_simulation(cfg: ExperimentConfig, mech: Mechanism | None = None) -> dict:
    mech = mechanism_for(cfg) if mech is None else mech
    reg = mech.follower(cfg.eta)
    unreg = mech.unregulated(cfg.eta)
    sims = simulate_strategies(
        cfg.market, cfg.leader_alpha, [unreg.ratio, reg.ratio],
        SimConfig(cfg.paths, cfg.steps, cfg.seed), alphas=[cfg.follower_alpha] * 2,
    )
    out = {}
    for name, sol, sim in (("unregulated", unreg, sims[0]), ("regulated", reg, sims[1])):
        rec = sim.to_record()
        rec.update(
            ratio=sol.ratio,
            closed_form_fund=sol.expected_terminal_fund,
            closed_form_utility=sol.expected_utility,
            fund_z=(sim.mean_terminal_fund - sol.expected_terminal_fund) / sim.std_error,
            utility_z=(sim.mean_utility - sol.expected_utility) / sim.utility_std_error,
        )
        out[name] = rec
    return out


@dataclass(frozen=True)
class SweepRow:
    axis: str
    value: float
    kappa: float
    alpha: float
    eta: float
    threshold: float
    critical_alpha: float
    region: str
    policy: float
    compensation: float
    decision_T: float
    unregulated_decision_T: float
    regulated_ratio: float
    unregulated_ratio: float
    gain: float
    potential_gain: float
    chi: float


def _row(axis, value, mech: Mechanism, eta, region, critical_alpha=math.nan) -> SweepRow:
    res = mech.evaluate(eta)
    return SweepRow(
        axis=axis,
        value=float(value),
        kappa=mech.cost.kappa,
        alpha=mech.profiles.follower_alpha,
        eta=float(eta),
        threshold=res.threshold,
        critical_alpha=critical_alpha,
        region=region,
        policy=res.policy,
        compensation=res.compensation,
        decision_T=res.decision_T,
        unregulated_decision_T=res.unregulated_decision_T,
        regulated_ratio=res.regulated_ratio,
        unregulated_ratio=res.unregulated_ratio,
        gain=res.realized_gain,
        potential_gain=res.potential_gain,
        chi=res.chi,
    )


def critical_alpha(cfg: ExperimentConfig, eta: float, kappa: float, lo: float = 0.2, tol: float = 1e-10) -> float:
    """Risk coefficient at which the herd threshold equals ``eta``.

    Bisection on alpha in [lo, leader_alpha]; the threshold is treated as
    +inf where the regulator never intervenes. Returns ``leader_alpha`` when
    the threshold stays below ``eta`` all the way up (e.g. ``kappa = 0``).
    """
    m, u, lead = cfg.market, cfg.utilities.policy, cfg.leader_alpha

    def above(alpha):
        return threshold(m, AgentProfiles(lead, alpha), u, kappa).value >= eta

    if above(lo):
        return lo
    if not above(lead - tol):
        return lead
    hi = lead
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if above(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def run_case1(cfg: ExperimentConfig) -> tuple[list[SweepRow], dict]:
    """Sweep the follower's risk coefficient at fixed herd coefficient."""
    alphas = cfg.sweep("alpha", 0.2, 0.35)
    eta = cfg.eta
    rows, summary = [], {"eta": eta, "critical_alpha": {}}
    for kappa in cfg.kappa_list:
        crit = critical_alpha(cfg, eta, kappa, lo=float(alphas[0]))
        summary["critical_alpha"][str(kappa)] = crit
        for a in alphas:
            mech = mechanism_for(cfg, alpha=a, kappa=kappa)
            if a >= cfg.leader_alpha:
                region = "i"
            elif mech.regulated(eta):
                region = "iii"
            else:
                region = "ii"
            rows.append(_row("alpha", a, mech, eta, region, crit))
    return _ordered(rows), summary


def run_case2(cfg: ExperimentConfig) -> tuple[list[SweepRow], dict]:
    """Sweep the herd coefficient at fixed risk coefficient."""
    etas = cfg.sweep("eta", 0.0, 0.01)
    rows, summary = [], {"alpha": cfg.follower_alpha, "threshold": {}, "regulated_decision_spread": {}}
    for kappa in cfg.kappa_list:
        mech = mechanism_for(cfg, kappa=kappa)
        summary["threshold"][str(kappa)] = mech.threshold.value
        kept = []
        for e in etas:
            region = "i" if mech.regulated(e) else "ii"
            row = _row("eta", e, mech, e, region)
            rows.append(row)
            if region == "i":
                kept.append(row.decision_T)
        # relative spread of the regulated decision over the regulated region
        spread = (max(kept) - min(kept)) / np.mean(kept) if kept else 0.0
        summary["regulated_decision_spread"][str(kappa)] = float(spread)
    return _ordered(rows), summary


def run_verify(cfg: ExperimentConfig, n: int = 51) -> list[dict]:
    """IR and IC checks on ``n`` points of (threshold, eta_max] per kappa."""
    out = []
    for kappa in cfg.kappa_list:
        mech = mechanism_for(cfg, kappa=kappa)
        lo = mech.threshold.value if mech.threshold.intervenes else 0.0
        hi = cfg.eta
        for e in np.linspace(lo, hi, n + 1)[1:]:
            ir = verify_ir(mech, e)
            ic = verify_ic(mech, e)
            out.append({
                "kappa": kappa, "eta": float(e), "ir_pass": ir.passed, "ir_slack": ir.slack,
                "ic_pass": ic.passed, "ic_best_report": ic.best_report, "ic_excess": ic.excess,
            })
    return out


def _ordered(rows: list[SweepRow]) -> list[SweepRow]:
    return sorted(rows, key=lambda r: (r.value, r.kappa))


# ---------------------------------------------------------------------------
# output


def _config_record(cfg: ExperimentConfig) -> dict:
    rec = asdict(cfg)
    rec["kappa_list"] = list(cfg.kappa_list)
    return rec


def _follower_record(sol) -> dict:
    rec = asdict(sol)
    rec.pop("fixed_point")
    rec["mu_residual"] = sol.fixed_point.residual
    return rec


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (float, np.floating)):
        return f"{x:.{SIG_DIGITS}g}"
    return str(x)


def _json_value(x):
    if isinstance(x, dict):
        return {k: _json_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_value(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (float, np.floating)):
        return float(f"{x:.{SIG_DIGITS}g}") if math.isfinite(x) else None
    if isinstance(x, np.integer):
        return int(x)
    return x


def _records(table) -> list[dict]:
    return [asdict(r) if hasattr(r, "__dataclass_fields__") else dict(r) for r in table]


def emit(table, fmt: str, path: str | os.PathLike) -> Path:
    """Write rows as CSV (header + one line per row) or a JSON array."""
    records = _records(table)
    if not records:
        raise DomainError("refusing to write an empty table")
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        if fmt == "csv":
            with path.open("w", newline="") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                header = list(records[0])
                writer.writerow(header)
                for rec in records:
                    writer.writerow([_fmt(rec[k]) for k in header])
        elif fmt == "json":
            path.write_text(json.dumps(_json_value(records), indent=1) + "\n")
        else:
            raise DomainError(f"unknown format {fmt!r}")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
    return path


def write_json(obj, path: str | os.PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_json_value(obj), indent=1, sort_keys=True) + "\n")
    return path


def _parse_cell(s: str):
    if s in ("true", "false"):
        return s == "true"
    try:
        return float(s)
    except ValueError:
        return s


def read_table(path: str | os.PathLike) -> list[dict]:
    path = Path(path)
    if path.suffix == ".json":
        return json.loads(path.read_text())
    with path.open(newline="") as fh:
        return [{k: _parse_cell(v) for k, v in row.items()} for row in csv.DictReader(fh)]
