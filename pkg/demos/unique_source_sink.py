"""
Two demand levels between one source and one sink
=================================================

When every scenario ships from the same origin to the same target of a
series-parallel network, a greedy method suffices: route the extra demand
of the larger scenario on free arcs first, then send the common demand
along cheapest paths in what capacity remains. More scenarios reduce to
the smallest and the largest demand.
"""

import random

from robflow import dp_solve, solve_enumeration, solve_unique_sp
from robflow.solve import solve_unique_pipeline
from robflow.spdec import random_sp_instance

rng = random.Random(7)
while True:
    net, tree = random_sp_instance(7, 3, 5, 2, mode="unique", rng=rng, max_demand=4,
                                   min_capacity=1)
    res = solve_unique_sp(net)
    if res.optimal and res.info["low"] < res.info["high"]:
        break

print("tree:", tree.to_text())
for a in net.arcs:
    print(f"  arc {a.id}: {a.tail}->{a.head} cap {a.capacity} cost {a.cost} {a.kind.value}")
print(f"demands {res.info['low']} and {res.info['high']}")

# The larger scenario dominates arc by arc, and it is the costlier one.
f1, f2 = res.flow[0], res.flow[1]
print("f1:", {a: x for a, x in sorted(f1.items()) if x})
print("f2:", {a: x for a, x in sorted(f2.items()) if x})
print("dominates:", all(f2[a] >= f1[a] for a in f2))
print("scenario costs", res.cost.scenario_costs)
print("greedy", res.robust_cost, "| DP", dp_solve(net, tree).robust_cost,
      "| enumeration", solve_enumeration(net).robust_cost)

# Four scenarios: solve the extremes, then re-route the middle ones around
# the shared fixed-arc load.
while True:
    net4, _ = random_sp_instance(6, 3, 5, 4, mode="unique", rng=rng, max_demand=4,
                                 min_capacity=1)
    res4 = solve_unique_pipeline(net4)
    if res4.optimal:
        break
print("four-scenario costs", res4.cost.scenario_costs,
      "| enumeration", solve_enumeration(net4).robust_cost)
