"""Adaptive NOMA/OMA power allocation and clustering for mixed IoT/eMBB uplinks."""
from .adaptive import ClusterDecision, decide_cluster, find_w1_min
from .clustering import (
    ClusterPlan,
    Policy,
    build_proposed_plan,
    build_random_plan,
    build_strongest_weakest_plan,
    compute_l_star,
)
from .model import (
    ClusterSpec,
    MaScheme,
    PowerAllocation,
    SolveResult,
    SubproblemKind,
    SystemParams,
    UserClass,
    ee_noma,
    ee_oma,
    se_noma_strong,
    se_noma_weak,
    se_oma,
    weighted_objective,
)
from .noma import solve_noma, solve_noma_es, solve_noma_se, solve_noma_ss
from .numeric import SolverConfig, maximize_concave_1d
from .oma import dinkelbach_ee, solve_oma
from .oracle import GridSpec, oracle_best_ma, oracle_solve
from .scenario import (
    CellGeometry,
    ChannelParams,
    Scenario,
    UserRecord,
    deterministic_scenario,
    gain_from_distance,
    random_scenario,
)

__version__ = "0.1.0"
