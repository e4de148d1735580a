"""
Partition as a robust flow question
===================================

A multiset of positive integers summing to 2w splits into two halves of
sum w exactly when a two-scenario network on a chain of parallel links has
a robust flow of cost at most 3w. This script builds that network for a
small multiset, solves it with the series-parallel dynamic program and
shows which fixed arcs carry load.
"""

from robflow import (PartitionInstance, brute_partition, decompose, dp_solve,
                     gen_partition_instance, robust_cost, solve_enumeration)

values = [3, 1, 1, 2, 2, 1]
p = PartitionInstance(values)
net, beta = gen_partition_instance(p)
print(f"values {values}, half sum {p.half}, threshold {beta}")

# Each link i offers three unit arcs: free at cost 2s, fixed at cost s and
# free at cost 0. Scenario 1 ships two units along the whole chain, scenario 2
# ships one unit and must finish on the expensive last arc.
for a in net.arcs[:3]:
    print(f"  arc {a.id}: {a.tail}->{a.head} cost {a.cost} {a.kind.value}")

# The digraph is series-parallel, so the label-table DP applies.
tree = decompose(net)
print("SP tree:", tree.to_text())

res = dp_solve(net, tree)
print(f"DP optimum {res.robust_cost}, labels built {res.info['labels']}")

# A loaded fixed arc puts its value in one half of the partition.
chosen = [s for s, a in zip(values, net.fixed_arcs) if res.load[a.id]]
print(f"loaded links carry {chosen}, sum {sum(chosen)}")
report = robust_cost(net, res.flow)
print("scenario costs", report.scenario_costs)

# Enumeration over load vectors gives the same optimum; brute force agrees
# on the yes/no answer.
print("enumeration optimum", solve_enumeration(net).robust_cost)
print("partition exists:", brute_partition(p), "| cost within threshold:", res.robust_cost <= beta)

# An odd sum cannot be split; [2] alone cannot either.
single, b = gen_partition_instance(PartitionInstance([2]))
print("values [2]: optimum", dp_solve(single).robust_cost, "> threshold", b)
