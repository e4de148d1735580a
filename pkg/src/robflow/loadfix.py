"""Fixed-load transformation, exact enumeration over loads, scenario reduction.

Once the load on every fixed arc is known, the scenarios decouple: delete the
fixed arcs, move their load into the vertex balances and solve one ordinary
min cost flow per scenario. ``solve_enumeration`` minimises that over all
load vectors. It walks the load vectors in lexicographic arc-id order as a
depth-first search and skips subtrees whose relaxation (unassigned fixed arcs
treated as free, scenario by scenario) is infeasible or cannot beat the
incumbent. The optimum and the lexicographically first optimal load are the
same as for plain enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Mapping

from robflow.errors import BudgetExceeded, PreconditionError
from robflow.mcf import McfInstance, solve_mcf
from robflow.network import Network, RobustFlow, SolveResult, infeasible, robust_cost

DEFAULT_ENUM_BUDGET = 10**7

LoadVector = Mapping[int, int]


def check_load(net: Network, load: LoadVector) -> None:
    fixed = {a.id: a for a in net.fixed_arcs}
    if set(load) != set(fixed):
        raise ValueError("load must assign exactly the fixed arcs")
    for aid, x in load.items():
        if not 0 <= x <= fixed[aid].capacity:
            raise ValueError(f"load {x} on arc {aid} outside [0, {fixed[aid].capacity}]")


def shifted_balances(net: Network, scenario: int, load: LoadVector) -> dict[int, int]:
    """Scenario balances after moving the given fixed-arc loads into the vertices."""
    bal = dict(net.balances[scenario])
    for aid, x in load.items():
        a = net.arc_by_id[aid]
        bal[a.tail] = bal.get(a.tail, 0) - x
        bal[a.head] = bal.get(a.head, 0) + x
    return bal


def transform_fixed_load(net: Network, load: LoadVector) -> list[McfInstance]:
    """One MCF instance per scenario on the free arcs, balances shifted by the load."""
    check_load(net, load)
    return [McfInstance(net.num_vertices, net.free_arcs, shifted_balances(net, k, load))
            for k in range(net.num_scenarios)]


def solve_with_fixed_load(net: Network, load: LoadVector) -> SolveResult:
    """Optimal robust flow whose fixed arcs carry exactly ``load``."""
    instances = transform_fixed_load(net, load)
    flows = []
    for inst in instances:
        res = solve_mcf(inst)
        if not res.optimal:
            return infeasible("fixed-load")
        flows.append({**res.flow, **load})
    flow = RobustFlow(flows)
    return SolveResult(True, flow, robust_cost(net, flow), dict(load), method="fixed-load")


def enumeration_size(net: Network) -> int:
    return prod(a.capacity + 1 for a in net.fixed_arcs)


class _Search:
    def __init__(self, net: Network, target: int | None):
        self.net = net
        self.fixed = sorted(net.fixed_arcs, key=lambda a: a.id)
        self.target = target
        self.best_cost: int | None = None
        self.best_flows: list[dict[int, int]] | None = None
        self.nodes = 0
        self.mcf_calls = 0
        self.done = False

    def relax(self, k: int, depth: int, load: dict[int, int]):
        """Scenario-k optimum with the first ``depth`` fixed arcs pinned to ``load``."""
        net = self.net
        pinned = {a.id for a in self.fixed[:depth]}
        arcs = [a for a in net.arcs if a.id not in pinned]
        self.mcf_calls += 1
        res = solve_mcf(McfInstance(net.num_vertices, arcs, shifted_balances(net, k, load)))
        if not res.optimal:
            return None
        fixed_cost = sum(net.arc_by_id[aid].cost * x for aid, x in load.items())
        return res.cost + fixed_cost, {**res.flow, **load}

    def prunes(self, bound: int) -> bool:
        if self.target is not None and bound > self.target:
            return True
        return self.best_cost is not None and bound >= self.best_cost

    def visit(self, depth: int, load: dict[int, int], scen: list[tuple[int, dict]]) -> None:
        self.nodes += 1
        bound = max(c for c, _ in scen)
        if self.prunes(bound):
            return
        if depth == len(self.fixed):
            self.best_cost = bound
            self.best_flows = [f for _, f in scen]
            if self.target is not None:
                self.done = True
            return
        a = self.fixed[depth]
        for x in range(a.capacity + 1):
            child_load = {**load, a.id: x}
            child = []
            for k, (c, f) in enumerate(scen):
                # a scenario optimum that already uses x on this arc stays optimal
                if f[a.id] == x:
                    child.append((c, f))
                    continue
                r = self.relax(k, depth + 1, child_load)
                if r is None:
                    break
                child.append(r)
            else:
                self.visit(depth + 1, child_load, child)
            if self.done or self.best_cost == bound:
                return


def _search(net: Network, budget: int | None, target: int | None) -> tuple[SolveResult, _Search]:
    budget = DEFAULT_ENUM_BUDGET if budget is None else budget
    size = enumeration_size(net)
    if size > budget:
        raise BudgetExceeded(f"{size} load vectors exceed the enumeration budget {budget}")
    s = _Search(net, target)
    root = []
    for k in range(net.num_scenarios):
        r = s.relax(k, 0, {})
        if r is None:
            break
        root.append(r)
    else:
        s.visit(0, {}, root)
    info = {"nodes": s.nodes, "mcf_calls": s.mcf_calls, "load_vectors": size}
    if s.best_flows is None:
        return infeasible("enum", **info), s
    flow = RobustFlow(s.best_flows)
    load = {a.id: s.best_flows[0][a.id] for a in s.fixed}
    return SolveResult(True, flow, robust_cost(net, flow), load, "enum", info), s


def solve_enumeration(net: Network, budget: int | None = None) -> SolveResult:
    """Exact optimum over all load vectors.

    Raises ``BudgetExceeded`` when the number of load vectors, the product of
    ``u(a) + 1`` over fixed arcs, is larger than ``budget``.
    """
    return _search(net, budget, None)[0]


def exists_within(net: Network, threshold: int, budget: int | None = None) -> bool:
    """Whether some robust flow costs at most ``threshold``; stops at the first one."""
    return _search(net, budget, threshold)[0].optimal


# -- unique source / unique sink scenario reduction ------------------------------

@dataclass(frozen=True)
class ScenarioMap:
    """How a reduced network's scenarios relate to the original ones.

    ``kept`` lists the original indices of the reduced scenarios in order
    (minimum supply first). ``supplies[k]`` is the original scenario-k supply.
    """

    source: int | None
    sink: int | None
    supplies: tuple[int, ...]
    kept: tuple[int, ...]


def unique_terminals(net: Network) -> tuple[int | None, int | None, tuple[int, ...]]:
    """Common source, common sink and per-scenario supply.

    Raises ``PreconditionError`` unless every scenario has at most one vertex
    with positive and at most one with negative balance and these are the
    same vertices in all scenarios.
    """
    sources, sinks = set(), set()
    for k, bal in enumerate(net.balances):
        pos = [v for v, b in bal.items() if b > 0]
        neg = [v for v, b in bal.items() if b < 0]
        if len(pos) > 1 or len(neg) > 1:
            raise PreconditionError(f"scenario {k + 1} has several sources or sinks")
        sources.update(pos)
        sinks.update(neg)
    if len(sources) > 1 or len(sinks) > 1:
        raise PreconditionError("source or sink differs between scenarios")
    s = next(iter(sources), None)
    t = next(iter(sinks), None)
    supplies = tuple(net.balance(k, s) if s is not None else 0
                     for k in range(net.num_scenarios))
    return s, t, supplies


def reduce_scenarios(net: Network) -> tuple[Network, ScenarioMap]:
    """Keep only a minimum-supply and a maximum-supply scenario."""
    s, t, supplies = unique_terminals(net)
    lo = supplies.index(min(supplies))
    hi = supplies.index(max(supplies))
    kept = (lo,) if supplies[lo] == supplies[hi] else (lo, hi)
    reduced = Network(net.num_vertices, net.arcs, [net.balances[k] for k in kept])
    return reduced, ScenarioMap(s, t, supplies, kept)


def extend_scenarios(net: Network, two_flow: RobustFlow, mapping: ScenarioMap) -> RobustFlow:
    """Rebuild a flow for every original scenario from the reduced solution.

    Scenarios whose supply matches a kept one copy its flow. The others keep
    the common fixed-arc load and re-optimise the free arcs; the result never
    costs more than the more expensive kept scenario.
    """
    if len(two_flow) != len(mapping.kept):
        raise ValueError("flow does not match the reduced scenario count")
    by_supply = {mapping.supplies[k]: two_flow[i] for i, k in enumerate(mapping.kept)}
    load = {a.id: two_flow[0][a.id] for a in net.fixed_arcs}
    flows = []
    for k, sup in enumerate(mapping.supplies):
        if sup in by_supply:
            flows.append(dict(by_supply[sup]))
            continue
        res = solve_mcf(McfInstance(net.num_vertices, net.free_arcs,
                                    shifted_balances(net, k, load)))
        assert res.optimal, "intermediate scenario repair cannot be infeasible"
        flows.append({**res.flow, **load})
    return RobustFlow(flows)
