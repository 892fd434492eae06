"""Brute-force grid maximizers used as ground truth for the solvers.

The oracle always searches both power axes over the full budget box, even
where the solvers fix a power analytically.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ClusterSpec, MaScheme, SystemParams, weighted_terms


@dataclass(frozen=True)
class GridSpec:
    n1: int = 1000
    n2: int = 1000
    includes_endpoints: bool = True

    def __post_init__(self):
        if self.n1 < 2 or self.n2 < 2:
            raise ValueError("grid resolutions must be at least 2")
        if not self.includes_endpoints:
            raise ValueError("oracle grids always include both endpoints")


@dataclass(frozen=True)
class OracleResult:
    p1: float
    p2: float
    objective: float
    grid_gap: float  # bound on how far the continuous maximum can exceed the grid maximum


def objective_grid(spec: ClusterSpec, scheme: MaScheme, params: SystemParams, grid: GridSpec):
    b1, b2 = spec.budgets(scheme)
    p1 = np.linspace(0.0, b1, grid.n1)
    p2 = np.linspace(0.0, b2, grid.n2)
    t1, t2 = weighted_terms(spec, p1[:, None], p2[None, :], scheme, params)
    values = np.broadcast_to(t1 + t2, (grid.n1, grid.n2))
    return p1, p2, values


def _grid_gap(values):
    # largest step between neighbouring grid points along each axis; for a
    # function that is monotone or concave within each cell this bounds the
    # amount by which the continuous maximum can beat the grid maximum
    gap = 0.0
    if values.shape[0] > 1:
        gap += float(np.max(np.abs(np.diff(values, axis=0))))
    if values.shape[1] > 1:
        gap += float(np.max(np.abs(np.diff(values, axis=1))))
    return gap


def oracle_solve(spec: ClusterSpec, scheme: MaScheme, params: SystemParams, grid: GridSpec = GridSpec()) -> OracleResult:
    p1, p2, values = objective_grid(spec, scheme, params, grid)
    # argmax returns the first maximum in C order: smallest p1, then smallest p2
    i, j = np.unravel_index(int(np.argmax(values)), values.shape)
    return OracleResult(float(p1[i]), float(p2[j]), float(values[i, j]), _grid_gap(values))


def oracle_best_ma(spec: ClusterSpec, params: SystemParams, grid: GridSpec = GridSpec()):
    """Better scheme by grid search under both schemes; ties go to OMA."""
    noma = oracle_solve(spec, MaScheme.NOMA, params, grid)
    oma = oracle_solve(spec, MaScheme.OMA, params, grid)
    if noma.objective > oma.objective:
        return MaScheme.NOMA, noma.objective
    return MaScheme.OMA, oma.objective
