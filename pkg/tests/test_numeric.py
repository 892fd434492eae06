import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from adaptive_noma.numeric import NumericalError, SolverConfig, maximize_concave_1d


def test_interior_maximum():
    x, fx = maximize_concave_1d(lambda x: -(x - 1.0) ** 2, 0.0, 2.0)
    assert x == pytest.approx(1.0, abs=1e-7)
    assert fx == pytest.approx(0.0, abs=1e-12)


def test_boundary_maximum():
    x, fx = maximize_concave_1d(lambda x: x, 0.0, 2.0)
    assert x == 2.0 and fx == 2.0


def test_dinkelbach_inner_stationary_point():
    # frozen from a 10^6-point grid on [0, 10]: argmax 0.4427
    x, _ = maximize_concave_1d(lambda x: math.log2(1.0 + x) - x, 0.0, 10.0)
    assert x == pytest.approx(1.0 / math.log(2.0) - 1.0, abs=1e-7)
    assert x == pytest.approx(0.4427, abs=1e-5)


def test_degenerate_interval():
    assert maximize_concave_1d(lambda x: x * x, 3.0, 3.0) == (3.0, 9.0)


def test_errors():
    with pytest.raises(ValueError):
        maximize_concave_1d(lambda x: x, 1.0, 0.0)
    with pytest.raises(NumericalError):
        maximize_concave_1d(lambda x: math.nan, 0.0, 1.0)
    with pytest.raises(ValueError):
        SolverConfig(tol_objective=0.0)
    with pytest.raises(ValueError):
        SolverConfig(multistart_points=(0.0, 1.5))
    with pytest.raises(ValueError):
        SolverConfig(max_outer_iters=0)


@settings(max_examples=60, deadline=None)
@given(st.floats(-5.0, 5.0), st.floats(0.1, 10.0), st.floats(-3.0, 3.0), st.floats(0.01, 6.0))
def test_concave_quadratics_against_grid(lo, width, center, curvature):
    hi = lo + width
    f = lambda x: -curvature * (x - center) ** 2
    x, fx = maximize_concave_1d(f, lo, hi)
    assert lo <= x <= hi
    grid = np.linspace(lo, hi, 10**4)
    assert fx >= np.max(f(grid)) - 1e-9
