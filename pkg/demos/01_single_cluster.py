# One two-user cluster, solved every way the package knows.
#
#   python3 demos/01_single_cluster.py

import numpy as np

from adaptive_noma import ClusterSpec, MaScheme, SystemParams, decide_cluster, oracle_solve, solve_noma, solve_oma
from adaptive_noma.oma import dinkelbach_ee

params = SystemParams(k_s=30.0, k_e=1.0)  # phi=2, Q=10 mW

# %% a weak IoT user (gain 1/mW) and a strong eMBB user (gain 25/mW)
spec = ClusterSpec.of_kind("ES", 1.0, 25.0, w1=0.5)
noma = solve_noma(spec, params)
oma = solve_oma(spec, params)
print("NOMA powers (mW):", round(noma.p1, 4), round(noma.p2, 4), "objective", noma.objective)
print("OMA  powers (mW):", round(oma.p1, 4), round(oma.p2, 4), "objective", oma.objective)

# the fractional-programming trace only ever goes up
print("NOMA trace:", np.round(noma.trace.objectives, 6))

# %% the same cluster on a 1000 x 1000 grid
ref = oracle_solve(spec, MaScheme.NOMA, params)
print("grid optimum:", ref.objective, "at", (round(ref.p1, 3), round(ref.p2, 3)))

# %% the IoT user's OMA power comes from Dinkelbach on a doubled budget
p, ee, trace = dinkelbach_ee(1.0, 20.0, params)
print("Dinkelbach:", round(p, 6), "mW, EE", ee, "in", len(trace.lambdas), "iterations")

# %% pick whichever scheme is better for this weight
for w1 in (0.1, 0.5, 0.9):
    d = decide_cluster(ClusterSpec.of_kind("SE", 1.0, 100.0, w1), params)
    print(f"SE cluster, w1={w1}: {d.chosen.value}")
