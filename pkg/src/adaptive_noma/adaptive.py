"""Per-cluster choice between NOMA and OMA by comparing optimized objectives."""
from __future__ import annotations

import logging
from dataclasses import dataclass, replace

import numpy as np

from .model import ClusterSpec, MaScheme, SolveResult, SubproblemKind, SystemParams
from .noma import solve_noma
from .numeric import DEFAULT_CONFIG, SolverConfig
from .oma import solve_oma

log = logging.getLogger(__name__)


@dataclass
class ClusterDecision:
    spec: ClusterSpec
    chosen: MaScheme
    oma_result: SolveResult
    noma_result: SolveResult | None
    objective: float

    @property
    def result(self) -> SolveResult:
        return self.noma_result if self.chosen is MaScheme.NOMA else self.oma_result

    def to_dict(self) -> dict:
        return {
            "kind": self.spec.kind.value,
            "chosen": self.chosen.value,
            "objective": self.objective,
            "oma": self.oma_result.to_dict(),
            "noma": None if self.noma_result is None else self.noma_result.to_dict(),
        }


def decide_cluster(spec: ClusterSpec, params: SystemParams, config: SolverConfig = DEFAULT_CONFIG) -> ClusterDecision:
    oma = solve_oma(spec, params, config)
    if spec.kind is SubproblemKind.EE:
        # OMA beats NOMA for two IoT users at any powers; no need to solve NOMA
        return ClusterDecision(spec, MaScheme.OMA, oma, None, oma.objective)
    noma = solve_noma(spec, params, config)
    # ties keep OMA, which needs no SIC receiver
    if noma.objective > oma.objective:
        return ClusterDecision(spec, MaScheme.NOMA, oma, noma, noma.objective)
    return ClusterDecision(spec, MaScheme.OMA, oma, noma, oma.objective)


def compare_over_weights(spec_template: ClusterSpec, params: SystemParams, w1_grid, config=DEFAULT_CONFIG):
    """NOMA and OMA optimized objectives at each weight in ``w1_grid``."""
    noma, oma = [], []
    for w1 in w1_grid:
        spec = replace(spec_template, w1=float(w1))
        noma.append(solve_noma(spec, params, config).objective)
        oma.append(solve_oma(spec, params, config).objective)
    return np.array(noma), np.array(oma)


def find_w1_min(spec_template: ClusterSpec, params: SystemParams, config: SolverConfig = DEFAULT_CONFIG,
                w1_grid=None):
    """Smallest grid weight from which NOMA is at least as good as OMA (SE clusters).

    Returns None when OMA wins on the whole grid. If the winner flips more
    than once along the grid a warning is logged and the first NOMA-winning
    weight is still returned.
    """
    if spec_template.kind is not SubproblemKind.SE:
        raise ValueError(f"w1_min is defined for SE clusters, got {spec_template.kind.value}")
    if w1_grid is None:
        w1_grid = np.round(np.arange(0.05, 0.951, 0.05), 10)
    w1_grid = np.asarray(w1_grid, dtype=float)
    if np.any(np.diff(w1_grid) <= 0) or w1_grid[0] <= 0 or w1_grid[-1] >= 1:
        raise ValueError("w1_grid must be strictly increasing inside (0, 1)")

    noma, oma = compare_over_weights(spec_template, params, w1_grid, config)
    noma_wins = noma >= oma
    if not noma_wins.any():
        return None
    flips = int(np.count_nonzero(np.diff(noma_wins.astype(int))))
    if flips > 1 or (flips == 1 and noma_wins[0]):
        log.warning("NOMA/OMA winner changes %d times along the w1 grid; no clean threshold", flips)
    return float(w1_grid[int(np.argmax(noma_wins))])
