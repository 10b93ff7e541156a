"""Command-line front end.

    herdreg solve    [--simulate]     one point, JSON record
    herdreg case1                     risk-coefficient sweep
    herdreg case2                     herd-coefficient sweep
    herdreg simulate                  Monte Carlo vs closed form
    herdreg verify                    IR / IC grid checks

All subcommands take --config, --out, --format, --seed and one flag per
config key (e.g. --follower-alpha 0.25).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import harness
from .harness import ExperimentConfig


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", type=Path, help="flat key = value config file")
    p.add_argument("--out", type=Path, help="output directory (default: print to stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv", help="table format")
    p.add_argument("--seed", type=int, help="Monte Carlo seed")
    for name in ("r", "nu", "sigma", "T", "leader_alpha", "follower_alpha", "eta", "kappa",
                 "u_slope", "v_slope", "sweep_min", "sweep_max"):
        p.add_argument("--" + name.replace("_", "-"), dest=name, type=float)
    p.add_argument("--sweep-axis", dest="sweep_axis", choices=("alpha", "eta"))
    p.add_argument("--sweep-n", dest="sweep_n", type=int)
    p.add_argument("--kappa-list", dest="kappa_list",
                   type=lambda s: tuple(float(x) for x in s.replace(",", " ").split()),
                   help="comma-separated kappa variants")
    p.add_argument("--paths", type=int)
    p.add_argument("--steps", type=int)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="herdreg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()
    solve = sub.add_parser("solve", parents=[common], help="solve one parameter point")
    solve.add_argument("--simulate", action="store_true", help="also run the Monte Carlo check")
    sub.add_parser("case1", parents=[common], help="sweep the follower risk coefficient")
    sub.add_parser("case2", parents=[common], help="sweep the herd coefficient")
    sub.add_parser("simulate", parents=[common], help="Monte Carlo check of both branches")
    verify = sub.add_parser("verify", parents=[common], help="IR/IC checks on an eta grid")
    verify.add_argument("--points", type=int, default=51)
    return parser


_CONFIG_KEYS = set(ExperimentConfig.__dataclass_fields__)


def _config(args) -> ExperimentConfig:
    overrides = {k: v for k, v in vars(args).items() if k in _CONFIG_KEYS}
    return harness.load_config(args.config, **overrides)


def _write_record(record, args, name: str) -> None:
    if args.out is None:
        json.dump(harness._json_value(record), sys.stdout, indent=1, sort_keys=True)
        sys.stdout.write("\n")
    else:
        print(harness.write_json(record, args.out / f"{name}.json"))


def _write_table(rows, args, name: str) -> None:
    if args.out is None:
        if args.format == "json":
            json.dump(harness._json_value(harness._records(rows)), sys.stdout, indent=1)
            sys.stdout.write("\n")
        else:
            import csv

            records = harness._records(rows)
            w = csv.writer(sys.stdout, lineterminator="\n")
            w.writerow(list(records[0]))
            for rec in records:
                w.writerow([harness._fmt(v) for v in rec.values()])
    else:
        print(harness.emit(rows, args.format, args.out / f"{name}.{args.format}"))


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = _config(args)
    cmd = args.command
    if cmd == "solve":
        _write_record(harness.run_point(cfg, simulate=args.simulate), args, "solve")
    elif cmd in ("case1", "case2"):
        rows, summary = (harness.run_case1 if cmd == "case1" else harness.run_case2)(cfg)
        _write_table(rows, args, cmd)
        if args.out is not None:
            print(harness.write_json(summary, args.out / f"{cmd}_summary.json"))
        else:
            print(json.dumps(harness._json_value(summary), sort_keys=True), file=sys.stderr)
    elif cmd == "simulate":
        _write_record(harness.run_simulation(cfg), args, "simulate")
    elif cmd == "verify":
        rows = harness.run_verify(cfg, args.points)
        _write_table(rows, args, "verify")
        failed = [r for r in rows if not (r["ir_pass"] and r["ic_pass"])]
        if failed:
            r = failed[0]
            print(f"herdreg: verify failed at kappa={r['kappa']:g} eta={r['eta']:.6g} "
                  f"({len(failed)} failing points)", file=sys.stderr)
            return 1
    return 0


def main(argv=None) -> int:
    try:
        return run(argv)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"herdreg: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
