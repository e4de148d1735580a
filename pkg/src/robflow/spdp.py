"""Exact solver on series-parallel networks: demand labels over the SP tree.

A label of tree vertex ``v`` is a pair ``(supply, budget)`` of per-scenario
integer vectors. It is present iff some consistent integral flow in the
subgraph ``G_v`` ships ``supply`` out of its origin, meets the network
balance at every other vertex except the target, and costs exactly
``budget`` in every scenario. Absent keys stand for infeasible ones, so a
table maps ``supply -> {budget: backpointer}`` and only feasible keys are
stored.
"""

from __future__ import annotations

from operator import add
from typing import Dict, Tuple

from robflow.errors import BudgetExceeded
from robflow.network import Arc, Network, RobustFlow, SolveResult, infeasible, robust_cost
from robflow.spdec import SpTree, decompose, evaluate

DEFAULT_LABEL_BUDGET = 10**7

Vec = Tuple[int, ...]
Labels = Dict[Vec, Dict[Vec, object]]


def _vec_add(x: Vec, y: Vec) -> Vec:
    return tuple(map(add, x, y))


def label_count(labels: Labels) -> int:
    return sum(len(c) for c in labels.values())


def dp_init_leaf(arc: Arc, num_scenarios: int, allowed=None) -> Labels:
    """Labels of a single arc: budget equals cost times supply, per scenario.

    A fixed arc additionally needs the same supply in every scenario.
    """
    out: Labels = {}
    if arc.fixed:
        supplies = [(x,) * num_scenarios for x in range(arc.capacity + 1)]
    else:
        supplies = [()]
        for _ in range(num_scenarios):
            supplies = [s + (x,) for s in supplies for x in range(arc.capacity + 1)]
    for s in supplies:
        if allowed is not None and s not in allowed:
            continue
        out[s] = {tuple(arc.cost * x for x in s): None}
    return out


def dp_combine_parallel(left: Labels, right: Labels, allowed=None, budget=None) -> Labels:
    """Component-wise sums of every pair of feasible child keys."""
    out: Labels = {}
    count = 0
    for sx, cmap_x in left.items():
        for sy, cmap_y in right.items():
            s = _vec_add(sx, sy)
            if allowed is not None and s not in allowed:
                continue
            target = out.setdefault(s, {})
            before = len(target)
            for cx in cmap_x:
                for cy in cmap_y:
                    c = _vec_add(cx, cy)
                    if c not in target:
                        target[c] = (sx, cx, sy, cy)
            count += len(target) - before
            if budget is not None and count > budget:
                raise BudgetExceeded(f"more than {budget} labels at a P-vertex")
    return {s: c for s, c in out.items() if c}


def dp_combine_series(left: Labels, right: Labels, beta: Vec, allowed=None,
                      budget=None) -> Labels:
    """Left keys ``(s, c_x)`` joined with right keys ``(s + beta, c_y)``.

    ``beta`` is the per-scenario net balance of the left subgraph's vertices
    other than its origin, i.e. what the inner vertices add to (or absorb
    from) the flow before it enters the right subgraph.
    """
    out: Labels = {}
    count = 0
    for sx, cmap_x in left.items():
        if allowed is not None and sx not in allowed:
            continue
        sy = _vec_add(sx, beta)
        cmap_y = right.get(sy)
        if not cmap_y:
            continue
        target: dict = {}
        for cx in cmap_x:
            for cy in cmap_y:
                c = _vec_add(cx, cy)
                if c not in target:
                    target[c] = (cx, sy, cy)
        out[sx] = target
        count += len(target)
        if budget is not None and count > budget:
            raise BudgetExceeded(f"more than {budget} labels at an S-vertex")
    return out


def subgraph_vertices(tree: SpTree) -> dict[int, frozenset[int]]:
    verts: dict[int, frozenset[int]] = {}
    for i in tree.postorder():
        node = tree.nodes[i]
        if node.kind == "L":
            verts[i] = frozenset((node.origin, node.target))
        else:
            verts[i] = verts[node.left] | verts[node.right]
    return verts


def series_shift(net: Network, tree: SpTree, i: int,
                 verts: dict[int, frozenset[int]] | None = None) -> Vec:
    """Per-scenario sum of balances over the left child's vertices minus its origin."""
    node = tree.nodes[i]
    verts = verts or subgraph_vertices(tree)
    left = tree.nodes[node.left]
    inner = verts[node.left] - {left.origin}
    return tuple(sum(net.balance(k, w) for w in inner) for k in range(net.num_scenarios))


def _needed_supplies(net: Network, tree: SpTree, verts, root_supply: Vec) -> dict[int, set]:
    """Supplies that can take part in a root solution, propagated top-down."""
    need: dict[int, set] = {tree.root: {root_supply}}
    for i in reversed(tree.postorder()):
        node = tree.nodes[i]
        if node.kind == "L":
            continue
        n = need[i]
        if node.kind == "S":
            beta = series_shift(net, tree, i, verts)
            need[node.left] = set(n)
            need[node.right] = {s for s in (_vec_add(x, beta) for x in n) if min(s) >= 0}
        else:
            box: set = set()
            for s in n:
                part = [()]
                for x in s:
                    part = [p + (y,) for p in part for y in range(x + 1)]
                box.update(part)
            need[node.left] = box
            need[node.right] = box
    return need


def compute_labels(net: Network, tree: SpTree, restrict_to: Vec | None = None,
                   budget: int | None = None) -> dict[int, Labels]:
    """Label tables of every tree vertex, bottom-up.

    With ``restrict_to`` set to the root supply, tables keep only supplies
    that can still reach the root; the root table is unchanged by this.
    """
    budget = DEFAULT_LABEL_BUDGET if budget is None else budget
    verts = subgraph_vertices(tree)
    need = _needed_supplies(net, tree, verts, restrict_to) if restrict_to else {}
    tables: dict[int, Labels] = {}
    total = 0
    for i in tree.postorder():
        node = tree.nodes[i]
        allowed = need.get(i)
        if node.kind == "L":
            tables[i] = dp_init_leaf(net.arc_by_id[node.arc], net.num_scenarios, allowed)
        elif node.kind == "P":
            tables[i] = dp_combine_parallel(tables[node.left], tables[node.right],
                                            allowed, budget - total)
        else:
            beta = series_shift(net, tree, i, verts)
            tables[i] = dp_combine_series(tables[node.left], tables[node.right], beta,
                                          allowed, budget - total)
        total += label_count(tables[i])
        if total > budget:
            raise BudgetExceeded(f"label count exceeds the budget {budget}")
    return tables


def _backtrack(tree: SpTree, tables: dict[int, Labels], num_scenarios: int,
               s: Vec, c: Vec) -> list[dict[int, int]]:
    flows: list[dict[int, int]] = [{} for _ in range(num_scenarios)]
    stack = [(tree.root, s, c)]
    while stack:
        i, s, c = stack.pop()
        node = tree.nodes[i]
        ptr = tables[i][s][c]
        if node.kind == "L":
            for k in range(num_scenarios):
                flows[k][node.arc] = s[k]
        elif node.kind == "P":
            sx, cx, sy, cy = ptr
            stack.append((node.left, sx, cx))
            stack.append((node.right, sy, cy))
        else:
            cx, sy, cy = ptr
            stack.append((node.left, s, cx))
            stack.append((node.right, sy, cy))
    return flows


def dp_solve(net: Network, tree: SpTree | None = None, budget: int | None = None,
             restrict: bool = True) -> SolveResult:
    """Optimal robust flow of an SP network via its SP tree."""
    tree = tree or decompose(net)
    if evaluate(tree) != {a.id: (a.tail, a.head) for a in net.arcs}:
        raise ValueError("tree does not describe this network's digraph")
    covered = set(subgraph_vertices(tree)[tree.root])
    for k in range(net.num_scenarios):
        if any(v not in covered for v in net.balances[k]):
            return infeasible("dp", reason="balance at a vertex without arcs")
    root_supply = tuple(net.balance(k, tree.origin) for k in range(net.num_scenarios))
    if min(root_supply) < 0:
        return infeasible("dp", reason="negative supply at the origin")
    tables = compute_labels(net, tree, root_supply if restrict else None, budget)
    budgets = tables[tree.root].get(root_supply)
    info = {"labels": sum(label_count(t) for t in tables.values())}
    if not budgets:
        return infeasible("dp", **info)
    best = min(budgets, key=lambda c: (max(c), c))
    flow = RobustFlow(_backtrack(tree, tables, net.num_scenarios, root_supply, best))
    report = robust_cost(net, flow)
    assert report.scenario_costs == best
    load = {a.id: flow[0][a.id] for a in net.fixed_arcs}
    return SolveResult(True, flow, report, load, "dp", info)
