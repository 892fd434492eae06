import csv
import io
import math

import numpy as np
import pytest

from adaptive_noma.clustering import Policy, build_strongest_weakest_plan
from adaptive_noma.experiments import (
    CSV_HEADER,
    SOLO_WEIGHT,
    Strategy,
    SweepDefinition,
    drop_seeds,
    evaluate_all_strategies,
    evaluate_plan,
    evaluate_strategy,
    records_to_csv,
    records_to_json,
    run_sweep,
)
from adaptive_noma.model import SystemParams, UserClass
from adaptive_noma.numeric import NumericalError, SolverConfig
from adaptive_noma.scenario import Scenario, UserRecord, deterministic_scenario, random_scenario

PARAMS = SystemParams(k_s=30.0, k_e=1.0)


def test_single_embb_user_is_a_full_power_solo():
    gamma = 3.0
    scen = Scenario([UserRecord(0, UserClass.EMBB, gamma)])
    got = evaluate_strategy(scen, Strategy.PROPOSED_ADAPTIVE, 0.5, PARAMS)
    expected = SOLO_WEIGHT / PARAMS.k_s * math.log2(1 + gamma * 20.0) * PARAMS.bandwidth_hz * 1000
    assert got == pytest.approx(expected, rel=1e-12)


def test_adaptive_dominates_per_scenario():
    for seed in range(4):
        scen = random_scenario(4, 5, rng_seed=seed)
        res = evaluate_all_strategies(scen, 0.4, PARAMS, rng_seed=seed)
        assert res[Strategy.PROPOSED_ADAPTIVE] >= res[Strategy.PROPOSED_NOMA]
        assert res[Strategy.PROPOSED_ADAPTIVE] >= res[Strategy.PROPOSED_OMA]


def test_oma_totals_do_not_depend_on_pairing_at_equal_weights():
    for seed in range(5):
        scen = random_scenario(5, 6, rng_seed=seed)
        res = evaluate_all_strategies(scen, 0.5, PARAMS, rng_seed=100 + seed)
        assert res[Strategy.RANDOM_OMA] == res[Strategy.PROPOSED_OMA]


def test_strategy_and_batch_agree():
    scen = random_scenario(3, 4, rng_seed=11)
    batch = evaluate_all_strategies(scen, 0.6, PARAMS, rng_seed=5)
    for s in Strategy:
        assert evaluate_strategy(scen, s, 0.6, PARAMS, rng_seed=5) == batch[s]


def test_ss_noma_beats_oma_on_deterministic_pairs():
    plan = build_strongest_weakest_plan(deterministic_scenario().users)
    for w1 in (0.2, 0.5, 0.8):
        tot = evaluate_plan(plan, w1, PARAMS, modes=("NOMA", "OMA"))
        assert tot["NOMA"] >= tot["OMA"]


def test_force_oma_policy_matches_oma_mode():
    plan = build_strongest_weakest_plan(deterministic_scenario().users, Policy.FORCE_OMA)
    tot = evaluate_plan(plan, 0.5, PARAMS)
    assert tot["Adaptive"] == tot["OMA"]


def test_non_convergence_raises():
    plan = build_strongest_weakest_plan(deterministic_scenario().users)
    tight = SolverConfig(tol_objective=1e-30, max_outer_iters=1)
    with pytest.raises(NumericalError):
        evaluate_plan(plan, 0.5, PARAMS, tight)


def test_drop_seeds_are_distinct_and_stable():
    a = drop_seeds(0, 1, 2)
    b = drop_seeds(0, 1, 2)
    assert [s.generate_state(2).tolist() for s in a] == [s.generate_state(2).tolist() for s in b]
    assert drop_seeds(0, 1, 3)[0].generate_state(2).tolist() != a[0].generate_state(2).tolist()


def test_sweep_csv_shape_and_rerun():
    defn = SweepDefinition("t", "n_per_group", (2, 3), w1=0.4)
    recs = run_sweep(defn, drops=2, seed=3)
    text = records_to_csv(recs)
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == CSV_HEADER
    assert len(rows) == 1 + 2 * len(Strategy)
    assert {r[2] for r in rows[1:]} == {s.value for s in Strategy}
    assert all(r[4] == "2" and r[5] == "3" for r in rows[1:])
    assert records_to_csv(run_sweep(defn, drops=2, seed=3)) == text
    assert '"per_drop"' in records_to_json(recs)


def test_sweep_mean_is_mean_of_drops():
    recs = run_sweep(SweepDefinition("t", "q", (10.0,), n_iot=2, n_embb=3), drops=3, seed=1)
    for r in recs:
        assert len(r.per_drop) == 3
        assert r.mean_objective == pytest.approx(np.mean(r.per_drop), rel=1e-14)


def test_bad_sweeps():
    with pytest.raises(ValueError):
        run_sweep(SweepDefinition("t", "w1", ()), drops=1)
    with pytest.raises(ValueError):
        run_sweep(SweepDefinition("t", "w1", (0.5,)), drops=0)
    with pytest.raises(ValueError):
        run_sweep(SweepDefinition("t", "bogus", (1,)), drops=1)
