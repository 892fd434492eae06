"""Quadratic-transform solvers for the NOMA subproblems SS, ES and SE.

Each solver alternates between maximizing a concave surrogate over the
powers (1-D golden-section search per power variable) and a closed-form
update of the auxiliary variables. At every auxiliary update the surrogate
equals the true objective, so the true objective never decreases.

The EE+EE subproblem has no NOMA solver: OMA dominates it for any powers.
"""
from __future__ import annotations

import itertools
import math

from .model import (
    ClusterSpec,
    FpTrace,
    MaScheme,
    PowerAllocation,
    SolveResult,
    SubproblemKind,
    SystemParams,
    weighted_objective,
)
from .numeric import DEFAULT_CONFIG, SolverConfig, maximize_concave_1d
from .oma import dinkelbach_ee

log2 = math.log2
sqrt = math.sqrt


def _require_kind(spec: ClusterSpec, kind: SubproblemKind):
    if spec.kind is not kind:
        raise ValueError(f"expected a {kind.value} cluster, got {spec.kind.value}")


def _as_vec(p):
    return p if isinstance(p, tuple) else (p,)


def _accelerate(p, obj, d, d_prev, objective_fn, clip):
    """Extrapolate along two aligned steps ``d_prev`` then ``d``; returns the best improving point or None.

    Shrinking steps jump to the sum of the remaining geometric series.
    Growing steps try doubling moves while the true objective keeps rising.
    """
    dd = sum(a * b for a, b in zip(d, d_prev))
    nn = sum(a * a for a in d_prev)
    n = sum(a * a for a in d)
    if nn == 0.0 or n == 0.0 or dd <= 0.0 or dd * dd < 0.99 * n * nn:
        return None
    r = math.sqrt(n / nn)

    def moved(k):
        x = tuple(a + k * da for a, da in zip(_as_vec(p), d))
        return clip(x if isinstance(p, tuple) else x[0])

    best = None
    if 0.5 < r < 1.0:
        cand = moved(r / (1.0 - r))
        cand_obj = objective_fn(cand)
        if cand_obj > obj:
            best = cand, cand_obj
    elif r >= 1.0:
        k = 1.0
        while k < 1e6:
            cand = moved(k)
            cand_obj = objective_fn(cand)
            if not cand_obj > obj:
                break
            best, obj = (cand, cand_obj), cand_obj
            k *= 2.0
    return best


def _fp_ascent(p0, aux_fn, objective_fn, step_fn, config: SolverConfig, clip=None) -> tuple:
    """Alternate ``step_fn`` (power update) and ``aux_fn`` until the objective settles.

    The plain fixed-point iteration can creep for hundreds of rounds on flat
    stretches. With ``clip`` (projection onto the power box), once two
    consecutive steps line up, an extrapolated point is tried and kept only if
    it improves the true objective, so the trace stays nondecreasing.
    """
    trace = FpTrace()
    p = p0
    aux = aux_fn(p)
    obj = objective_fn(p)
    trace.objectives.append(obj)
    trace.aux_values.append(aux)
    d_prev = None
    for _ in range(config.max_outer_iters - 1):
        p_prev = p
        p = step_fn(p, aux)
        new_obj = objective_fn(p)
        d = tuple(b - a for a, b in zip(_as_vec(p_prev), _as_vec(p)))
        jump = None if clip is None or d_prev is None else _accelerate(p, new_obj, d, d_prev, objective_fn, clip)
        d_prev = d
        if jump is not None:
            (p, new_obj), d_prev = jump, None
        aux = aux_fn(p)
        trace.objectives.append(new_obj)
        trace.aux_values.append(aux)
        done = abs(new_obj - obj) < config.tol_objective
        obj = new_obj
        if done:
            trace.converged = True
            break
    return p, obj, trace


def _ascend(surrogate, current, lo, hi, config):
    """1-D surrogate maximization that never moves to a worse surrogate value."""
    x, fx = maximize_concave_1d(surrogate, lo, hi, config)
    return x if fx >= surrogate(current) else current


def _pick_best(runs):
    # strict > keeps the earliest start on ties, so results are deterministic
    best = runs[0]
    for run in runs[1:]:
        if run[1] > best[1]:
            best = run
    return best


def _result(spec, params, p1, p2, trace=None, start_traces=(), dinkelbach=(), converged=True):
    alloc = PowerAllocation(p1, p2, MaScheme.NOMA)
    return SolveResult(
        allocation=alloc,
        objective=weighted_objective(spec, alloc, params),
        converged=converged,
        trace=trace,
        start_traces=list(start_traces),
        dinkelbach=list(dinkelbach),
    )


def solve_noma_ss(spec: ClusterSpec, params: SystemParams, config: SolverConfig = DEFAULT_CONFIG) -> SolveResult:
    """Both users eMBB. The strong user always transmits at full power."""
    _require_kind(spec, SubproblemKind.SS)
    P1, P2 = spec.p1_max, spec.p2_max
    if spec.w1 == 1.0:
        return _result(spec, params, P1, P2)
    if spec.w1 == 0.0:
        return _result(spec, params, 0.0, P2)

    g1 = spec.gamma1
    a = spec.gamma2 * P2
    sa = sqrt(a)
    c1 = 2.0 * spec.w1 / params.k_s
    c2 = 2.0 * spec.w2 / params.k_s

    def objective(p1):
        return c1 * log2(1.0 + g1 * p1) + c2 * log2(1.0 + a / (1.0 + g1 * p1))

    def aux(p1):
        return sa / (1.0 + g1 * p1)

    def step(p1, y):
        def surrogate(x):
            return c1 * log2(1.0 + g1 * x) + c2 * log2(1.0 + max(2.0 * y * sa - y * y * (1.0 + g1 * x), 0.0))

        # keeps 2 y sqrt(a) - y^2 (1 + g1 p1) >= 0
        hi = min(P1, (2.0 * sa / y - 1.0) / g1)
        return _ascend(surrogate, p1, 0.0, hi, config)

    clip = lambda x: min(max(x, 0.0), P1)
    runs = [_fp_ascent(f * P1, aux, objective, step, config, clip) for f in config.multistart_points]
    p1, _, trace = _pick_best(runs)
    return _result(spec, params, p1, P2, trace, [r[2] for r in runs], converged=trace.converged)


def solve_noma_es(spec: ClusterSpec, params: SystemParams, config: SolverConfig = DEFAULT_CONFIG) -> SolveResult:
    """Weak IoT user (EE), strong eMBB user (SE) at full power."""
    _require_kind(spec, SubproblemKind.ES)
    P1, P2 = spec.p1_max, spec.p2_max
    if spec.w1 == 1.0:
        p1, _, dtrace = dinkelbach_ee(spec.gamma1, P1, params, config)
        return _result(spec, params, p1, P2, dinkelbach=[dtrace], converged=dtrace.converged)
    if spec.w1 == 0.0:
        return _result(spec, params, 0.0, P2)

    g1 = spec.gamma1
    phi, q = params.phi, params.q
    a = spec.gamma2 * P2
    sa = sqrt(a)
    c1 = spec.w1 / params.k_e
    c2 = 2.0 * spec.w2 / params.k_s

    def objective(p1):
        return c1 * log2(1.0 + g1 * p1) / (phi * p1 + q) + c2 * log2(1.0 + a / (1.0 + g1 * p1))

    def aux(p1):
        return sqrt(log2(1.0 + g1 * p1)) / (phi * p1 + q), sa / (1.0 + g1 * p1)

    def step(p1, ys):
        y1, y2 = ys

        def surrogate(x):
            ee_part = 2.0 * y1 * sqrt(log2(1.0 + g1 * x)) - y1 * y1 * (phi * x + q)
            return c1 * ee_part + c2 * log2(1.0 + max(2.0 * y2 * sa - y2 * y2 * (1.0 + g1 * x), 0.0))

        hi = min(P1, (2.0 * sa / y2 - 1.0) / g1)
        return _ascend(surrogate, p1, 0.0, hi, config)

    clip = lambda x: min(max(x, 0.0), P1)
    runs = [_fp_ascent(f * P1, aux, objective, step, config, clip) for f in config.multistart_points]
    p1, _, trace = _pick_best(runs)
    return _result(spec, params, p1, P2, trace, [r[2] for r in runs], converged=trace.converged)


def solve_noma_se(spec: ClusterSpec, params: SystemParams, config: SolverConfig = DEFAULT_CONFIG) -> SolveResult:
    """Weak eMBB user (SE), strong IoT user (EE); both powers are optimized.

    Block-coordinate ascent on the surrogate: p1 first, then p2, inside every
    auxiliary round.
    """
    _require_kind(spec, SubproblemKind.SE)
    P1, P2 = spec.p1_max, spec.p2_max
    if spec.w1 == 1.0:
        # the strong IoT user's EE carries no weight; switch it off
        return _result(spec, params, P1, 0.0)
    if spec.w1 == 0.0:
        p2, _, dtrace = dinkelbach_ee(spec.gamma2, P2, params, config)
        return _result(spec, params, 0.0, p2, dinkelbach=[dtrace], converged=dtrace.converged)

    g1, g2 = spec.gamma1, spec.gamma2
    phi, q = params.phi, params.q
    c1 = 2.0 * spec.w1 / params.k_s
    c2 = spec.w2 / params.k_e

    def objective(p):
        p1, p2 = p
        return c1 * log2(1.0 + g1 * p1) + c2 * log2(1.0 + g2 * p2 / (1.0 + g1 * p1)) / (phi * p2 + q)

    def aux(p):
        p1, p2 = p
        t = sqrt(g2 * p2) / (1.0 + g1 * p1)
        u = max(2.0 * t * sqrt(g2 * p2) - t * t * (1.0 + g1 * p1), 0.0)
        # p2 = 0 gives t = 0 and y = 0; the EE term then contributes nothing
        y = sqrt(log2(1.0 + u)) / (phi * p2 + q)
        return t, y

    def step(p, ty):
        p1, p2 = p
        t, y = ty

        def ee_surrogate(x1, x2):
            u = max(2.0 * t * sqrt(g2 * x2) - t * t * (1.0 + g1 * x1), 0.0)
            return 2.0 * y * sqrt(log2(1.0 + u)) - y * y * (phi * x2 + q)

        def surrogate_p1(x):
            return c1 * log2(1.0 + g1 * x) + c2 * ee_surrogate(x, p2)

        hi1 = P1 if t == 0.0 else min(P1, (2.0 * sqrt(g2 * p2) / t - 1.0) / g1)
        p1 = _ascend(surrogate_p1, p1, 0.0, max(hi1, 0.0), config)

        def surrogate_p2(x):
            return c2 * ee_surrogate(p1, x)

        lo2 = 0.0 if t == 0.0 else min((t * (1.0 + g1 * p1) / 2.0) ** 2 / g2, p2)
        p2 = _ascend(surrogate_p2, p2, lo2, P2, config)
        return p1, p2

    starts = itertools.product(config.multistart_points, config.multistart_points)
    clip = lambda x: (min(max(x[0], 0.0), P1), min(max(x[1], 0.0), P2))
    runs = [_fp_ascent((f1 * P1, f2 * P2), aux, objective, step, config, clip) for f1, f2 in starts]
    (p1, p2), _, trace = _pick_best(runs)
    return _result(spec, params, p1, p2, trace, [r[2] for r in runs], converged=trace.converged)


NOMA_SOLVERS = {
    SubproblemKind.SS: solve_noma_ss,
    SubproblemKind.ES: solve_noma_es,
    SubproblemKind.SE: solve_noma_se,
}


def solve_noma(spec: ClusterSpec, params: SystemParams, config: SolverConfig = DEFAULT_CONFIG) -> SolveResult:
    try:
        solver = NOMA_SOLVERS[spec.kind]
    except KeyError:
        raise ValueError("no NOMA solver for EE clusters: OMA dominates NOMA there") from None
    return solver(spec, params, config)
