# The proposed pairing against a random one on a single drop.
#
#   python3 demos/03_clustering.py

from adaptive_noma import SystemParams, build_proposed_plan, build_random_plan, random_scenario
from adaptive_noma.clustering import split_by_class
from adaptive_noma.experiments import evaluate_all_strategies

scen = random_scenario(n_iot=5, n_embb=7, rng_seed=3)
for u in sorted(scen.users, key=lambda u: -u.gain):
    print(f"user {u.id:2d} {u.user_class.value:5s} {u.distance:6.1f} m  gain {u.gain:8.3f} /mW")

plan = build_proposed_plan(*split_by_class(scen.users))
print("\nproposed pairs (weak, strong):")
for p in plan.pairs:
    print(f"  {p.weak.id:2d} {p.strong.id:2d}  {p.kind.value}  {p.policy.value}")
print("  solo:", [u.id for u in plan.solos])

rnd = build_random_plan(scen.users, rng_seed=3)
print("random pairs:", [(p.weak.id, p.strong.id) for p in rnd.pairs], "solo:", [u.id for u in rnd.solos])

# totals in bits/J
for strategy, value in evaluate_all_strategies(scen, 0.5, SystemParams(k_s=30.0), rng_seed=3).items():
    print(f"{strategy.value:17s} {value:.4g}")
