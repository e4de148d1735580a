"""
Label tables on a series-parallel network
=========================================

On a series-parallel digraph the decomposition tree lets us build, bottom
up, the set of (supply vector, budget vector) pairs each subnetwork can
realise. This script walks a small two-scenario example with balances in
the middle of the graph and compares the result against enumeration.
"""

from robflow import Arc, ArcKind, Network, decompose, dp_solve, solve_enumeration
from robflow.spdp import compute_labels

FIX, FREE = ArcKind.FIXED, ArcKind.FREE

# 1 -> 2 -> 4 and 1 -> 3 -> 4, plus a direct arc 1 -> 4.
arcs = [Arc(1, 1, 2, 2, 1, FIX), Arc(2, 2, 4, 2, 1, FREE),
        Arc(3, 1, 3, 2, 2, FREE), Arc(4, 3, 4, 1, 1, FIX),
        Arc(5, 1, 4, 1, 6, FREE)]
# Scenario 2 drops one unit at vertex 2 on the way.
net = Network(4, arcs, [{1: 2, 4: -2}, {1: 3, 2: -1, 4: -2}])

tree = decompose(net)
print("tree:", tree.to_text())

# The tables are keyed by supply vectors; every key maps to its feasible
# budget vectors. Leaves of fixed arcs only offer equal entries per scenario.
tables = compute_labels(net, tree)
for i, node in enumerate(tree.nodes):
    if node.kind == "L":
        print(f"leaf arc {node.arc}: {len(tables[i])} supply keys")
root = tables[tree.root]
supply = (2, 3)
print(f"root budgets for supply {supply}:", sorted(root.get(supply, {})))

# The DP picks the budget vector with the smallest maximum.
res = dp_solve(net, tree)
print("DP optimum", res.robust_cost, "load", dict(res.load))
for k in range(net.num_scenarios):
    print(f"  scenario {k + 1}:", {a: x for a, x in sorted(res.flow[k].items()) if x})

print("enumeration optimum", solve_enumeration(net).robust_cost)
