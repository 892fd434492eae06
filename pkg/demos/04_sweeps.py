# Monte Carlo sweeps over random drops, written as CSV.
# Few drops here so it runs in seconds; the acceptance suite uses 50.
#
#   python3 demos/04_sweeps.py [drops]

import sys

import numpy as np

from adaptive_noma.experiments import FIGURES, records_to_csv, run_sweep

drops = int(sys.argv[1]) if len(sys.argv) > 1 else 5

for fig, defn in FIGURES.items():
    recs = run_sweep(defn, drops=drops, seed=0)
    with open(f"{defn.name}.csv", "w", newline="") as fh:
        fh.write(records_to_csv(recs))
    values = sorted({r.value for r in recs})
    strategies = list(dict.fromkeys(r.strategy for r in recs))
    table = np.array([[r.mean_objective for r in recs if r.value == v] for v in values]) / 1e6
    print(f"\n{defn.name}: {defn.sweep_var} (Mbit/J)")
    print("  value " + " ".join(f"{s.value:>16s}" for s in strategies))
    for v, row in zip(values, table):
        print(f"  {v:5g} " + " ".join(f"{x:16.3f}" for x in row))
