import pytest

from adaptive_noma.model import ClusterSpec, MaScheme, SystemParams
from adaptive_noma.noma import solve_noma_ss
from adaptive_noma.oracle import GridSpec, oracle_best_ma, oracle_solve

PARAMS = SystemParams(k_s=30.0, k_e=1.0)


@pytest.mark.parametrize("kind", ["SS", "ES", "SE", "EE"])
def test_zero_gain_limit(kind):
    spec = ClusterSpec.of_kind(kind, 1e-300, 1e-300, 0.5)
    r = oracle_solve(spec, MaScheme.NOMA, PARAMS, GridSpec(2, 2))
    assert r.objective == 0.0
    assert (r.p1, r.p2) == (0.0, 0.0)  # ties go to the smallest powers


def test_ss_oma_argmax_is_full_power():
    spec = ClusterSpec.of_kind("SS", 1.0, 10.0, 0.3)
    r = oracle_solve(spec, MaScheme.OMA, PARAMS, GridSpec(50, 50))
    assert (r.p1, r.p2) == (20.0, 20.0)


def test_refinement_and_solver_agreement():
    unit = SystemParams(k_s=1.0, k_e=1.0)
    spec = ClusterSpec.of_kind("SS", 1.0, 10.0, 0.4)
    coarse = oracle_solve(spec, MaScheme.NOMA, unit, GridSpec(100, 100))
    fine = oracle_solve(spec, MaScheme.NOMA, unit, GridSpec(1000, 1000))
    assert abs(fine.objective - coarse.objective) < 1e-4
    solver = solve_noma_ss(spec, unit)
    assert abs(solver.objective - fine.objective) <= fine.grid_gap


def test_refinement_within_lipschitz_bound():
    spec = ClusterSpec.of_kind("SE", 2.0, 30.0, 0.6)
    coarse = oracle_solve(spec, MaScheme.NOMA, PARAMS, GridSpec(100, 100))
    fine = oracle_solve(spec, MaScheme.NOMA, PARAMS, GridSpec(200, 200))
    assert 0.0 <= fine.objective - coarse.objective <= coarse.grid_gap


def test_grid_validation():
    with pytest.raises(ValueError):
        GridSpec(1, 10)


def test_best_ma_ee_is_oma():
    spec = ClusterSpec.of_kind("EE", 3.0, 40.0, 0.5)
    assert oracle_best_ma(spec, PARAMS, GridSpec(300, 300))[0] is MaScheme.OMA


def test_best_ma_ss_deterministic_pair_is_noma():
    # users 1 and 10 of the deterministic scenario
    spec = ClusterSpec.of_kind("SS", 1.0, 100.0, 0.5)
    assert oracle_best_ma(spec, PARAMS, GridSpec(300, 300))[0] is MaScheme.NOMA


def test_best_ma_se_zero_weight_is_oma():
    spec = ClusterSpec.of_kind("SE", 1.0, 100.0, 0.0)
    assert oracle_best_ma(spec, PARAMS, GridSpec(300, 300))[0] is MaScheme.OMA
