"""Strategy evaluation and Monte Carlo sweeps over random user drops.

Reported objectives are in bits/J: the per-Hz objective (powers in mW, K_S
read as a power in mW) times bandwidth times 1000.
"""
from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .adaptive import decide_cluster
from .clustering import (
    ClusterPlan,
    Policy,
    build_proposed_plan,
    build_random_plan,
    split_by_class,
)
from .model import MaScheme, SubproblemKind, SystemParams, UserClass, ee_oma, se_oma, weighted_terms
from .noma import solve_noma
from .numeric import DEFAULT_CONFIG, NumericalError, SolverConfig
from .oma import best_single_user_power, solve_oma
from .oracle import GridSpec, objective_grid
from .scenario import CellGeometry, ChannelParams, Scenario, random_scenario

CSV_HEADER = ["sweep_var", "value", "strategy", "mean_objective_bits_per_joule", "drops", "seed"]
EE_NOMA_GRID = GridSpec(200, 200)
SOLO_WEIGHT = 0.5


class Strategy(str, enum.Enum):
    PROPOSED_ADAPTIVE = "ProposedAdaptive"
    PROPOSED_NOMA = "ProposedNOMA"
    PROPOSED_OMA = "ProposedOMA"
    RANDOM_NOMA = "RandomNOMA"
    RANDOM_OMA = "RandomOMA"

    @property
    def proposed(self) -> bool:
        return self.value.startswith("Proposed")

    @property
    def mode(self) -> str:
        return self.value.replace("Proposed", "").replace("Random", "")


def to_bits_per_joule(value_per_hz: float, params: SystemParams) -> float:
    return value_per_hz * params.bandwidth_hz * 1000.0


def build_plan(scenario: Scenario, proposed: bool, rng_seed=None) -> ClusterPlan:
    if proposed:
        return build_proposed_plan(*split_by_class(scenario.users))
    return build_random_plan(scenario.users, rng_seed)


def _noma_ee_grid_terms(spec, params):
    # no FP solver exists for two IoT users; a coarse grid is enough for a baseline
    p1, p2, values = objective_grid(spec, MaScheme.NOMA, params, EE_NOMA_GRID)
    i, j = np.unravel_index(int(np.argmax(values)), values.shape)
    return weighted_terms(spec, p1[i], p2[j], MaScheme.NOMA, params)


def solo_term(user, params: SystemParams, p_max: float, config=DEFAULT_CONFIG):
    """Weighted OMA contribution of an unpaired user at its standalone optimum."""
    p, _ = best_single_user_power(user.user_class, user.gain, 2.0 * p_max, params, config)
    metric = ee_oma(user.gain, p, params) if user.user_class is UserClass.IOT else se_oma(user.gain, p)
    return SOLO_WEIGHT / params.norm(user.user_class) * metric


def _checked(result):
    if not result.converged:
        raise NumericalError(f"{result.scheme.value} solve did not converge")
    return result


def evaluate_plan(plan: ClusterPlan, w1: float, params: SystemParams, config: SolverConfig = DEFAULT_CONFIG,
                  p_max: float = 10.0, modes=("Adaptive", "NOMA", "OMA")) -> dict:
    """Total per-Hz objective of ``plan`` for each MA mode, solving every cluster once.

    Totals are exact-rounded sums of per-user terms, so two plans with the
    same multiset of terms give bit-identical totals.
    """
    terms = {mode: [] for mode in modes}
    for pair in plan.pairs:
        spec = pair.spec(w1, p_max)
        oma = _checked(solve_oma(spec, params, config))
        oma_terms = weighted_terms(spec, oma.p1, oma.p2, MaScheme.OMA, params)
        if spec.kind is SubproblemKind.EE:
            noma_terms = _noma_ee_grid_terms(spec, params) if "NOMA" in modes else None
            adaptive_terms = oma_terms
        else:
            needs_noma = "NOMA" in modes or ("Adaptive" in modes and pair.policy is not Policy.FORCE_OMA)
            noma = _checked(solve_noma(spec, params, config)) if needs_noma else None
            noma_terms = None if noma is None else weighted_terms(spec, noma.p1, noma.p2, MaScheme.NOMA, params)
            if "Adaptive" not in modes or pair.policy is Policy.FORCE_OMA:
                adaptive_terms = oma_terms
            elif pair.policy is Policy.FORCE_NOMA:
                adaptive_terms = noma_terms
            else:
                # same comparison as decide_cluster, reusing the solves
                adaptive_terms = noma_terms if noma.objective > oma.objective else oma_terms
        chosen = {"Adaptive": adaptive_terms, "NOMA": noma_terms, "OMA": oma_terms}
        for mode in modes:
            terms[mode].extend(float(t) for t in chosen[mode])
    solos = [float(solo_term(u, params, p_max, config)) for u in plan.solos]
    return {mode: math.fsum(terms[mode] + solos) for mode in modes}


def evaluate_strategy(scenario: Scenario, strategy: Strategy, w1: float, params: SystemParams,
                      config: SolverConfig = DEFAULT_CONFIG, rng_seed=None, p_max: float = 10.0) -> float:
    """Total objective in bits/J of one strategy on one scenario."""
    strategy = Strategy(strategy)
    plan = build_plan(scenario, strategy.proposed, rng_seed)
    total = evaluate_plan(plan, w1, params, config, p_max, modes=(strategy.mode,))[strategy.mode]
    return to_bits_per_joule(total, params)


def evaluate_all_strategies(scenario: Scenario, w1: float, params: SystemParams,
                            config: SolverConfig = DEFAULT_CONFIG, rng_seed=None, p_max: float = 10.0) -> dict:
    out = {}
    for proposed in (True, False):
        plan = build_plan(scenario, proposed, rng_seed)
        modes = ("Adaptive", "NOMA", "OMA") if proposed else ("NOMA", "OMA")
        totals = evaluate_plan(plan, w1, params, config, p_max, modes)
        prefix = "Proposed" if proposed else "Random"
        for mode, total in totals.items():
            out[Strategy(prefix + mode)] = to_bits_per_joule(total, params)
    return {s: out[s] for s in Strategy}


@dataclass(frozen=True)
class SweepDefinition:
    name: str
    sweep_var: str  # one of: n_per_group, n_embb, n_iot, q, w1
    values: tuple
    w1: float = 0.5
    n_iot: int = 6
    n_embb: int = 8
    k_s: float = 30.0
    k_e: float = 1.0
    q: float = 10.0


FIGURES = {
    9: SweepDefinition("fig9", "n_per_group", (2, 4, 6, 8, 10), w1=0.4, k_s=30.0),
    10: SweepDefinition("fig10", "n_embb", (8, 16, 24, 32, 40, 48), w1=0.5, n_iot=6, k_s=100.0),
    11: SweepDefinition("fig11", "q", (5.0, 10.0, 20.0, 50.0, 100.0, 200.0), w1=0.5, n_iot=8, n_embb=8, k_s=30.0),
    12: SweepDefinition("fig12", "w1", tuple(round(0.05 * i, 2) for i in range(1, 20)),
                        n_iot=6, n_embb=8, k_s=100.0),
}


@dataclass
class SweepRecord:
    sweep_var: str
    value: float
    strategy: Strategy
    mean_objective: float
    drops: int
    seed: int
    per_drop: list = field(default_factory=list)

    def csv_row(self) -> list:
        return [self.sweep_var, _fmt(self.value), self.strategy.value, repr(float(self.mean_objective)),
                str(self.drops), str(self.seed)]


def _fmt(value) -> str:
    if float(value).is_integer():
        return str(int(value))
    return repr(float(value))


def _point_setup(defn: SweepDefinition, value, params: SystemParams):
    n_iot, n_embb, w1 = defn.n_iot, defn.n_embb, defn.w1
    params = replace(params, k_s=defn.k_s, k_e=defn.k_e, q=defn.q)
    if defn.sweep_var == "n_per_group":
        n_iot = n_embb = int(value)
    elif defn.sweep_var == "n_embb":
        n_embb = int(value)
    elif defn.sweep_var == "n_iot":
        n_iot = int(value)
    elif defn.sweep_var == "q":
        params = replace(params, q=float(value))
    elif defn.sweep_var == "w1":
        w1 = float(value)
    else:
        raise ValueError(f"unknown sweep variable {defn.sweep_var!r}")
    return n_iot, n_embb, w1, params


def drop_seeds(base_seed: int, sweep_index: int, drop_index: int):
    """(scenario seed, random-clustering seed) for one drop; shared by all strategies."""
    ss = np.random.SeedSequence(base_seed, spawn_key=(sweep_index, drop_index))
    return tuple(ss.spawn(2))


def run_drop(defn: SweepDefinition, sweep_index: int, drop_index: int, params: SystemParams,
             config: SolverConfig, base_seed: int, geom: CellGeometry, cp: ChannelParams, p_max: float) -> dict:
    value = defn.values[sweep_index]
    n_iot, n_embb, w1, point_params = _point_setup(defn, value, params)
    scen_seed, clus_seed = drop_seeds(base_seed, sweep_index, drop_index)
    scenario = random_scenario(n_iot, n_embb, geom, cp, scen_seed)
    return evaluate_all_strategies(scenario, w1, point_params, config, clus_seed, p_max)


def run_sweep(defn: SweepDefinition, params: SystemParams = SystemParams(), config: SolverConfig = DEFAULT_CONFIG,
              drops: int = 50, seed: int = 0, geom: CellGeometry = CellGeometry(),
              cp: ChannelParams = ChannelParams(), p_max: float = 10.0, workers: int = 1) -> list:
    """Mean objective per (sweep point, strategy) over ``drops`` random scenarios."""
    if not defn.values:
        raise ValueError("sweep range is empty")
    if drops < 1:
        raise ValueError("need at least one drop")
    jobs = [(defn, si, di, params, config, seed, geom, cp, p_max)
            for si in range(len(defn.values)) for di in range(drops)]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(run_drop, *zip(*jobs)))
    else:
        results = [run_drop(*job) for job in jobs]

    records = []
    for si, value in enumerate(defn.values):
        chunk = results[si * drops:(si + 1) * drops]
        for strategy in Strategy:
            per_drop = [r[strategy] for r in chunk]
            records.append(SweepRecord(defn.sweep_var, value, strategy, math.fsum(per_drop) / drops,
                                       drops, seed, per_drop))
    return records


def sweep_group_size(n_range=FIGURES[9].values, w1=0.4, params=SystemParams(k_s=30.0), drops=50, seed=0, **kw):
    defn = SweepDefinition("fig9", "n_per_group", tuple(n_range), w1=w1, k_s=params.k_s, k_e=params.k_e, q=params.q)
    return run_sweep(defn, params, drops=drops, seed=seed, **kw)


def sweep_embb_count(n_embb_range=FIGURES[10].values, n_iot_fixed=6, w1=0.5, params=SystemParams(k_s=100.0),
                     drops=50, seed=0, **kw):
    defn = SweepDefinition("fig10", "n_embb", tuple(n_embb_range), w1=w1, n_iot=n_iot_fixed,
                           k_s=params.k_s, k_e=params.k_e, q=params.q)
    return run_sweep(defn, params, drops=drops, seed=seed, **kw)


def sweep_circuit_power(q_range=FIGURES[11].values, n_iot=8, n_embb=8, w1=0.5, params=SystemParams(k_s=30.0),
                        drops=50, seed=0, **kw):
    defn = SweepDefinition("fig11", "q", tuple(q_range), w1=w1, n_iot=n_iot, n_embb=n_embb,
                           k_s=params.k_s, k_e=params.k_e)
    return run_sweep(defn, params, drops=drops, seed=seed, **kw)


def sweep_weight(w1_range=FIGURES[12].values, n_iot=6, n_embb=8, params=SystemParams(k_s=100.0),
                 drops=50, seed=0, **kw):
    defn = SweepDefinition("fig12", "w1", tuple(w1_range), n_iot=n_iot, n_embb=n_embb,
                           k_s=params.k_s, k_e=params.k_e, q=params.q)
    return run_sweep(defn, params, drops=drops, seed=seed, **kw)


def records_to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        writer.writerow(rec.csv_row())
    return buf.getvalue()


def records_to_json(records) -> str:
    rows = [{"sweep_var": r.sweep_var, "value": r.value, "strategy": r.strategy.value,
             "mean_objective_bits_per_joule": r.mean_objective, "drops": r.drops, "seed": r.seed,
             "per_drop": r.per_drop} for r in records]
    return json.dumps(rows, indent=2)
