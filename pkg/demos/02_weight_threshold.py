# Where NOMA starts to pay off as the weak user's weight grows.
# Ten users at 100, 90, ..., 10 m, paired strongest with weakest.
#
#   python3 demos/02_weight_threshold.py

import numpy as np

from adaptive_noma import SystemParams, UserClass, build_strongest_weakest_plan, deterministic_scenario
from adaptive_noma.adaptive import compare_over_weights

params = SystemParams(k_s=30.0, k_e=1.0)
w1 = np.round(np.arange(0.05, 0.951, 0.05), 2)

layouts = {
    "SS": [UserClass.EMBB] * 10,
    "ES": [UserClass.IOT] * 5 + [UserClass.EMBB] * 5,  # far users are IoT
    "SE": [UserClass.EMBB] * 5 + [UserClass.IOT] * 5,  # far users are eMBB
}

for kind, classes in layouts.items():
    plan = build_strongest_weakest_plan(deterministic_scenario(classes).users)
    noma = np.zeros(len(w1))
    oma = np.zeros(len(w1))
    for pair in plan.pairs:
        n, o = compare_over_weights(pair.spec(0.5), params, w1)
        noma += n
        oma += o
    marks = "".join("N" if a >= b else "o" for a, b in zip(noma, oma))
    print(f"{kind}: {marks}   (N = NOMA at least as good, o = OMA better; w1 = 0.05 .. 0.95)")
