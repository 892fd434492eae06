import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from adaptive_noma.model import ClusterSpec, SystemParams
from adaptive_noma.noma import solve_noma, solve_noma_es, solve_noma_se, solve_noma_ss
from adaptive_noma.oma import dinkelbach_ee
from adaptive_noma.oracle import GridSpec, oracle_solve
from adaptive_noma.model import MaScheme

PARAMS = SystemParams(phi=2.0, q=10.0, k_s=30.0, k_e=1.0)


def test_ss_degenerate_weights():
    assert solve_noma_ss(ClusterSpec.of_kind("SS", 1.0, 10.0, 1.0), PARAMS).p1 == 10.0
    r = solve_noma_ss(ClusterSpec.of_kind("SS", 1.0, 10.0, 0.0), PARAMS)
    assert (r.p1, r.p2) == (0.0, 10.0)


def test_ss_matches_grid(unit_params):
    # frozen from a 10^5-point grid over p1 with p2 = P2 (max at p1 = 0)
    r = solve_noma_ss(ClusterSpec.of_kind("SS", 1.0, 10.0, 0.4), unit_params)
    assert r.objective == pytest.approx(7.989853779302154, rel=1e-3)
    assert r.p2 == 10.0


def test_es_degenerate_weights():
    r = solve_noma_es(ClusterSpec.of_kind("ES", 1.0, 10.0, 0.0), PARAMS)
    assert r.p1 == 0.0
    r = solve_noma_es(ClusterSpec.of_kind("ES", 1.0, 10.0, 1.0), PARAMS)
    p_ref, _, _ = dinkelbach_ee(1.0, 10.0, PARAMS)
    assert r.p1 == pytest.approx(p_ref, abs=1e-9)


def test_es_matches_grid(unit_params):
    r = solve_noma_es(ClusterSpec.of_kind("ES", 1.0, 10.0, 0.5), unit_params)
    assert r.objective == pytest.approx(6.658211482751795, rel=1e-3)


def test_se_degenerate_weights():
    r = solve_noma_se(ClusterSpec.of_kind("SE", 1.0, 10.0, 1.0), PARAMS)
    assert (r.p1, r.p2) == (10.0, 0.0)
    assert r.objective == pytest.approx(2.0 * np.log2(11.0) / 30.0)
    r = solve_noma_se(ClusterSpec.of_kind("SE", 1.0, 10.0, 0.0), PARAMS)
    p_ref, _, _ = dinkelbach_ee(10.0, 10.0, PARAMS)
    assert r.p1 == 0.0 and r.p2 == pytest.approx(p_ref, abs=1e-9)


def test_se_matches_2d_grid():
    # frozen from a 1000 x 1000 grid over (p1, p2): max 0.17713331738319696 at (10, 4.73)
    r = solve_noma_se(ClusterSpec.of_kind("SE", 1.0, 10.0, 0.5), PARAMS)
    assert r.objective == pytest.approx(0.17713331738319696, rel=1e-3)
    assert r.objective >= 0.17713331738319696


def test_wrong_kind_rejected():
    with pytest.raises(ValueError):
        solve_noma_ss(ClusterSpec.of_kind("ES", 1.0, 10.0, 0.5), PARAMS)
    with pytest.raises(ValueError):
        solve_noma_se(ClusterSpec.of_kind("SS", 1.0, 10.0, 0.5), PARAMS)
    with pytest.raises(ValueError):
        solve_noma(ClusterSpec.of_kind("EE", 1.0, 10.0, 0.5), PARAMS)


def _aux_fixed_point(spec, result):
    g1, g2, P2 = spec.gamma1, spec.gamma2, spec.p2_max
    last = result.trace.aux_values[-1]
    if spec.kind.value == "SS":
        fresh = (np.sqrt(g2 * P2) / (1 + g1 * result.p1),)
        last = (last,)
    elif spec.kind.value == "ES":
        fresh = (np.sqrt(np.log2(1 + g1 * result.p1)) / (PARAMS.phi * result.p1 + PARAMS.q),
                 np.sqrt(g2 * P2) / (1 + g1 * result.p1))
    else:
        t = np.sqrt(g2 * result.p2) / (1 + g1 * result.p1)
        fresh = (t, np.sqrt(np.log2(1 + g2 * result.p2 / (1 + g1 * result.p1))) / (PARAMS.phi * result.p2 + PARAMS.q))
    return np.allclose(last, fresh, rtol=1e-6, atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["SS", "ES", "SE"]), st.floats(0.1, 100.0), st.floats(0.1, 100.0), st.floats(0.05, 0.95))
def test_solver_invariants(kind, ga, gb, w1):
    g1, g2 = sorted((ga, gb))
    spec = ClusterSpec.of_kind(kind, g1, g2, w1)
    r = solve_noma(spec, PARAMS)
    assert 0.0 <= r.p1 <= spec.p1_max and 0.0 <= r.p2 <= spec.p2_max
    for trace in r.start_traces:
        assert len(trace.objectives) <= 200
        assert all(b >= a - 1e-9 for a, b in zip(trace.objectives, trace.objectives[1:]))
    assert r.converged
    assert _aux_fixed_point(spec, r)
    ref = oracle_solve(spec, MaScheme.NOMA, PARAMS, GridSpec(200, 200))
    assert r.objective >= ref.objective - 1e-6 - 1e-3 * abs(ref.objective)
    assert r.objective <= ref.objective + ref.grid_gap
