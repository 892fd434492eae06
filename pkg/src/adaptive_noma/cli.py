"""Command-line front end: single-cluster solves, plans, sweeps and oracle checks.

Exit codes: 0 success, 2 usage error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass, fields

import numpy as np

from .adaptive import decide_cluster
from .clustering import build_proposed_plan, build_random_plan, build_strongest_weakest_plan, split_by_class
from .experiments import FIGURES, SweepDefinition, records_to_csv, records_to_json, run_sweep
from .model import ClusterSpec, MaScheme, SubproblemKind, SystemParams, UserClass
from .noma import solve_noma
from .numeric import NumericalError, SolverConfig
from .oma import solve_oma
from .oracle import GridSpec, oracle_solve
from .scenario import CellGeometry, ChannelParams, Scenario, deterministic_scenario, random_scenario

EXIT_USAGE = 2
EXIT_NUMERIC = 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """Every key of the JSON configuration file, with its default."""

    phi: float = 2.0
    q: float = 10.0  # mW
    p_max: float = 10.0  # mW, per-user NOMA budget
    bandwidth: float = 1e5  # Hz
    n0: float = -170.0  # dBm/Hz
    nf: float = 10.0  # dB
    g0: float = -70.0  # dB
    n_exp: float = 2.0
    r_inner: float = 10.0  # m
    r_outer: float = 100.0  # m
    k_s: float = 30.0
    k_e: float = 1.0
    tol_objective: float = 1e-9
    max_outer_iters: int = 200
    max_inner_iters: int = 200
    multistart_points: tuple = (0.0, 0.5, 1.0)
    seed: int = 0
    drops: int = 50

    @classmethod
    def load(cls, path: str | None) -> "RunConfig":
        if path is None:
            return cls()
        with open(path) as fh:
            data = json.load(fh)
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        if "multistart_points" in data:
            data["multistart_points"] = tuple(data["multistart_points"])
        return cls(**data)

    def system(self) -> SystemParams:
        return SystemParams(self.phi, self.q, self.k_s, self.k_e, self.bandwidth)

    def channel(self) -> ChannelParams:
        return ChannelParams(self.g0, self.n_exp, self.n0, self.nf, self.bandwidth)

    def geometry(self) -> CellGeometry:
        return CellGeometry(self.r_inner, self.r_outer)

    def solver(self) -> SolverConfig:
        return SolverConfig(self.tol_objective, self.max_outer_iters, self.max_inner_iters,
                            None, self.multistart_points)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _emit(obj, out=None):
    print(json.dumps(obj, indent=2), file=out or sys.stdout)


def _write_atomic(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    with os.fdopen(fd, "w", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)


def cmd_solve(args, cfg: RunConfig):
    params, config = cfg.system(), cfg.solver()
    g1, g2 = sorted((args.gamma1, args.gamma2))
    spec = ClusterSpec.of_kind(args.kind, g1, g2, args.w1, cfg.p_max, cfg.p_max)
    if args.adaptive:
        decision = decide_cluster(spec, params, config)
        results = [decision.oma_result] + ([decision.noma_result] if decision.noma_result else [])
        out = decision.to_dict()
    else:
        scheme = MaScheme(args.scheme)
        if scheme is MaScheme.NOMA and spec.kind is SubproblemKind.EE:
            raise UsageError("no NOMA solver for EE clusters (OMA dominates); use --scheme OMA or --adaptive")
        result = solve_noma(spec, params, config) if scheme is MaScheme.NOMA else solve_oma(spec, params, config)
        results = [result]
        out = {"kind": spec.kind.value, "chosen": scheme.value, **result.to_dict()}
    if not all(r.converged for r in results):
        raise NumericalError("solver did not converge within the iteration cap")
    _emit(out)


def _load_scenario(args, cfg: RunConfig) -> Scenario:
    if args.scenario_file:
        with open(args.scenario_file) as fh:
            return Scenario.from_json(fh.read())
    if args.deterministic:
        classes = [UserClass(c) for c in args.classes.split(",")] if args.classes else UserClass.EMBB
        return deterministic_scenario(classes)
    n_iot, n_embb, seed = args.random
    return random_scenario(n_iot, n_embb, cfg.geometry(), cfg.channel(), seed)


def cmd_cluster(args, cfg: RunConfig):
    scenario = _load_scenario(args, cfg)
    if args.method == "proposed":
        plan = build_proposed_plan(*split_by_class(scenario.users))
    elif args.method == "random":
        plan = build_random_plan(scenario.users, cfg.seed)
    else:
        plan = build_strongest_weakest_plan(scenario.users)
    _emit({"scenario": json.loads(scenario.to_json()), "plan": plan.to_dict()})


def cmd_sweep(args, cfg: RunConfig):
    if args.figure is not None:
        base = FIGURES[args.figure]
        defn = base if args.values is None else SweepDefinition(
            base.name, base.sweep_var, tuple(args.values), base.w1, base.n_iot, base.n_embb, base.k_s, base.k_e,
            base.q)
    else:
        if args.sweep_var is None or args.values is None:
            raise UsageError("custom sweeps need --sweep-var and --values")
        defn = SweepDefinition("custom", args.sweep_var, tuple(args.values), args.w1, args.n_iot, args.n_embb,
                               cfg.k_s, cfg.k_e, cfg.q)
    drops = args.drops if args.drops is not None else cfg.drops
    seed = args.seed if args.seed is not None else cfg.seed
    if drops < 1:
        raise UsageError("--drops must be at least 1")
    records = run_sweep(defn, cfg.system(), cfg.solver(), drops, seed, cfg.geometry(), cfg.channel(),
                        cfg.p_max, args.workers)
    text = records_to_csv(records)
    if args.out:
        _write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    if args.json_out:
        _write_atomic(args.json_out, records_to_json(records))


def oracle_check(kind: SubproblemKind, trials: int, seed: int, cfg: RunConfig, grid: GridSpec) -> dict:
    """Solver-vs-oracle relative gaps on random clusters (dominance count for EE)."""
    params, config = cfg.system(), cfg.solver()
    rng = np.random.default_rng(seed)
    gaps = {"NOMA": [], "OMA": []}
    violations = 0
    for _ in range(trials):
        g1, g2 = np.sort(rng.uniform(0.1, 100.0, 2))
        spec = ClusterSpec.of_kind(kind, float(g1), float(g2), float(rng.uniform(0.05, 0.95)), cfg.p_max, cfg.p_max)
        oma = solve_oma(spec, params, config)
        ref = oracle_solve(spec, MaScheme.OMA, params, grid)
        gaps["OMA"].append((ref.objective - oma.objective) / abs(ref.objective))
        noma_ref = oracle_solve(spec, MaScheme.NOMA, params, grid)
        if kind is SubproblemKind.EE:
            violations += int(noma_ref.objective > oma.objective)
            continue
        noma = solve_noma(spec, params, config)
        gaps["NOMA"].append((noma_ref.objective - noma.objective) / abs(noma_ref.objective))
    out = {"kind": kind.value, "trials": trials, "seed": seed,
           "max_relative_gap": {k: max(v) for k, v in gaps.items() if v}}
    if kind is SubproblemKind.EE:
        out["oma_dominance_violations"] = violations
    return out


def cmd_oracle_check(args, cfg: RunConfig):
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    _emit(oracle_check(SubproblemKind(args.kind), args.trials, args.seed, cfg, GridSpec(args.grid, args.grid)))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="adaptive-noma", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="JSON configuration file")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve one two-user cluster")
    p.add_argument("--kind", required=True, choices=[k.value for k in SubproblemKind])
    p.add_argument("--gamma1", type=float, default=1.0, help="weak-user normalized gain (1/mW)")
    p.add_argument("--gamma2", type=float, default=10.0, help="strong-user normalized gain (1/mW)")
    p.add_argument("--w1", type=float, default=0.5)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--scheme", choices=["NOMA", "OMA"], default="NOMA")
    mode.add_argument("--adaptive", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("cluster", help="print a clustering plan")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--scenario-file")
    src.add_argument("--deterministic", action="store_true")
    src.add_argument("--random", nargs=3, type=int, metavar=("N_IOT", "N_EMBB", "SEED"))
    p.add_argument("--classes", help="comma-separated classes for --deterministic, e.g. IoT,eMBB,...")
    p.add_argument("--method", choices=["proposed", "random", "strongest-weakest"], default="proposed")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("sweep", help="run a Monte Carlo sweep and write CSV")
    p.add_argument("--figure", type=int, choices=sorted(FIGURES))
    p.add_argument("--sweep-var", choices=["n_per_group", "n_embb", "n_iot", "q", "w1"])
    p.add_argument("--values", type=float, nargs="+")
    p.add_argument("--w1", type=float, default=0.5)
    p.add_argument("--n-iot", type=int, default=6)
    p.add_argument("--n-embb", type=int, default=8)
    p.add_argument("--drops", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.add_argument("--json-out", help="optional JSON mirror with per-drop values")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle-check", help="compare solvers with the grid oracle")
    p.add_argument("--kind", required=True, choices=[k.value for k in SubproblemKind])
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid", type=int, default=1000, help="grid points per power axis")
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = RunConfig.load(args.config)
        args.func(args, cfg)
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return 0


if __name__ == "__main__":
    sys.exit(main())
