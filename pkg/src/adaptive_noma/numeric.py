"""One-dimensional concave maximization shared by the power-allocation solvers."""
from __future__ import annotations

import math
from dataclasses import dataclass

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0


class NumericalError(ArithmeticError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    tol_objective: float = 1e-9
    max_outer_iters: int = 200
    max_inner_iters: int = 200
    tol_x: float | None = None  # mW; None means 1e-9 * (hi - lo)
    multistart_points: tuple = (0.0, 0.5, 1.0)

    def __post_init__(self):
        if not self.tol_objective > 0:
            raise ValueError("tol_objective must be positive")
        if self.tol_x is not None and not self.tol_x > 0:
            raise ValueError("tol_x must be positive")
        if self.max_outer_iters < 1 or self.max_inner_iters < 1:
            raise ValueError("iteration caps must be at least 1")
        if not self.multistart_points:
            raise ValueError("need at least one multistart point")
        for frac in self.multistart_points:
            if not 0.0 <= frac <= 1.0:
                raise ValueError(f"multistart fraction {frac} outside [0, 1]")


DEFAULT_CONFIG = SolverConfig()


def _finite(fx, x):
    if not math.isfinite(fx):
        raise NumericalError(f"objective is not finite at x={x!r}: {fx!r}")
    return fx


def maximize_concave_1d(f, lo: float, hi: float, config: SolverConfig = DEFAULT_CONFIG):
    """Golden-section search for the maximizer of a unimodal ``f`` on ``[lo, hi]``.

    Returns ``(x, f(x))``. Both endpoints are evaluated as well, so the result
    is never worse than either end of the interval.
    """
    if lo > hi:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    f_lo = _finite(f(lo), lo)
    if hi == lo:
        return lo, f_lo
    f_hi = _finite(f(hi), hi)

    tol = config.tol_x if config.tol_x is not None else 1e-9 * (hi - lo)
    a, b = lo, hi
    h = b - a
    c = a + INV_PHI2 * h
    d = a + INV_PHI * h
    fc = _finite(f(c), c)
    fd = _finite(f(d), d)
    for _ in range(config.max_inner_iters):
        if h <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            h = INV_PHI * h
            c = a + INV_PHI2 * h
            fc = _finite(f(c), c)
        else:
            a, c, fc = c, d, fd
            h = INV_PHI * h
            d = a + INV_PHI * h
            fd = _finite(f(d), d)

    # ties go to the smaller x
    best_x, best_f = lo, f_lo
    for x, fx in ((c, fc), (d, fd), (hi, f_hi)):
        if fx > best_f:
            best_x, best_f = x, fx
    return best_x, best_f
