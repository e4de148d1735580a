"""
Satisfiability as a zero-cost robust flow
=========================================

A formula in which every literal occurs at most twice becomes a unit
capacity, zero cost network with two scenarios. Scenario 1 picks one
literal per variable by walking a chain of literal paths; scenario 2 must
serve every clause through literal arcs, and fixed arcs force it to agree
with the choice of scenario 1. A robust flow exists exactly when the
formula is satisfiable.
"""

import random

from robflow import (CnfFormula, NotSeriesParallel, brute_sat, decompose, exists_within,
                     gen_sat_instance, solve_enumeration)
from robflow.reductions import SatLayout, random_sat3b2

f = random_sat3b2(3, random.Random(1))
print("clauses:", f.clauses, "| satisfiable:", brute_sat(f))

for variant in ("multi_sink", "unique_sink"):
    net = gen_sat_instance(f, variant)
    print(f"{variant}: {net.num_vertices} vertices, {len(net.arcs)} arcs, "
          f"{len(net.fixed_arcs)} fixed")
    res = solve_enumeration(net)
    print("  robust flow found:", res.optimal, "cost", res.robust_cost)

# Read the assignment back from scenario 1: the literal path it uses is true.
net = gen_sat_instance(f)
res = solve_enumeration(net)
layout = SatLayout(f.n, f.m)
used = {(a.tail, a.head) for a in net.arcs if res.flow[0][a.id]}
true_lits = [i if (layout.v(i), layout.w(i, 1)) in used else -i for i in range(1, f.n + 1)]
print("scenario 1 picks literals", true_lits,
      "| satisfies formula:", f.satisfied_by([lit > 0 for lit in true_lits]))

# These networks are not series-parallel, so only enumeration applies.
try:
    decompose(net)
except NotSeriesParallel as exc:
    print("not series-parallel:", exc)

# Every (3,B2) formula this small is satisfiable, so the "no" side is shown
# with two variables and all four two-literal clauses.
xor = CnfFormula(2, [(1, 2), (1, -2), (-1, 2), (-1, -2)])
print("unsatisfiable formula: robust flow within cost 0:",
      exists_within(gen_sat_instance(xor), 0))
