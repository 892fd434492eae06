"""OMA power allocation: full power for SE users, Dinkelbach's method for EE users."""
from __future__ import annotations

import math

from .model import (
    ClusterSpec,
    DinkelbachTrace,
    MaScheme,
    PowerAllocation,
    SolveResult,
    SystemParams,
    UserClass,
    weighted_objective,
)
from .numeric import DEFAULT_CONFIG, SolverConfig

LN2 = math.log(2.0)
DINKELBACH_EPS = 1e-10


def dinkelbach_ee(gamma: float, p_max: float, params: SystemParams, config: SolverConfig = DEFAULT_CONFIG):
    """Maximize log2(1 + gamma p) / (phi p + q) over p in [0, p_max].

    Each parametric subproblem max log2(1 + gamma p) - lam (phi p + q) is
    strictly concave, so its maximizer is the clipped stationary point.
    Returns ``(p_opt, ee_opt, trace)``.
    """
    if not (gamma > 0 and p_max > 0):
        raise ValueError("gamma and p_max must be positive")
    phi, q = params.phi, params.q
    trace = DinkelbachTrace()
    lam = 0.0
    p = p_max
    for _ in range(config.max_outer_iters):
        if lam > 0:
            p = min(max(1.0 / (lam * phi * LN2) - 1.0 / gamma, 0.0), p_max)
        else:
            p = p_max
        power = phi * p + q
        ee = math.log2(1.0 + gamma * p) / power
        # written as power * (ee - lam) so that an unchanged p gives exactly 0
        residual = power * (ee - lam)
        if residual < 0.0:
            # p maximizes F(lam) and the previous iterate scores exactly 0 there, so a negative value is
            # rounding; F is too flat at the optimum to rank the two, and p is the sharper estimate
            residual = 0.0
        trace.lambdas.append(lam)
        trace.residuals.append(residual)
        if residual < DINKELBACH_EPS:
            # one extra update once below tolerance: convergence is superlinear, so it
            # takes p from ~1e-9 mW of the optimum down to rounding level
            if trace.converged or residual == 0.0:
                trace.converged = True
                break
            trace.converged = True
        lam = ee
    return p, math.log2(1.0 + gamma * p) / (phi * p + q), trace


def best_single_user_power(user_class: UserClass, gamma: float, budget: float, params: SystemParams,
                           config: SolverConfig = DEFAULT_CONFIG):
    """Optimal standalone OMA power for one user and its Dinkelbach trace (None for SE users)."""
    if user_class is UserClass.EMBB:
        return budget, None
    p, _, trace = dinkelbach_ee(gamma, budget, params, config)
    return p, trace


def solve_oma(spec: ClusterSpec, params: SystemParams, config: SolverConfig = DEFAULT_CONFIG) -> SolveResult:
    # the OMA objective separates per user, so each user is optimized on its own
    b1, b2 = spec.budgets(MaScheme.OMA)
    p1, tr1 = best_single_user_power(spec.class1, spec.gamma1, b1, params, config)
    p2, tr2 = best_single_user_power(spec.class2, spec.gamma2, b2, params, config)
    traces = [t for t in (tr1, tr2) if t is not None]
    alloc = PowerAllocation(p1, p2, MaScheme.OMA)
    return SolveResult(
        allocation=alloc,
        objective=weighted_objective(spec, alloc, params),
        converged=all(t.converged for t in traces),
        dinkelbach=traces,
    )
