"""Polynomial solver for series-parallel networks with one source and one sink.

With two scenarios of demand ``d1 <= d2`` between the origin and target, the
extra ``d2 - d1`` units of the larger scenario travel on free arcs only. They
are routed first by an ordinary min cost flow on the free subgraph; the
common ``d1`` units are then routed greedily along shortest paths in the
whole digraph with the capacity that is left.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Mapping

from robflow.errors import PreconditionError
from robflow.loadfix import unique_terminals
from robflow.mcf import McfResult, solve_mcf_demand
from robflow.network import Arc, Network, RobustFlow, SolveResult, infeasible, robust_cost
from robflow.spdec import decompose


@dataclass(frozen=True)
class TwoScenarioDemand:
    low: int
    high: int

    def __post_init__(self):
        if not 0 <= self.low <= self.high:
            raise ValueError(f"need 0 <= d1 <= d2, got {self.low}, {self.high}")

    @property
    def excess(self) -> int:
        return self.high - self.low


def _cheapest_path(arcs: list[Arc], cap: Mapping[int, int], origin: int, target: int):
    """Cost-shortest origin-target path over arcs with spare capacity.

    Ties go to the lexicographically smallest arc-id sequence.
    """
    out: dict[int, list[Arc]] = {}
    for a in arcs:
        if cap[a.id] > 0:
            out.setdefault(a.tail, []).append(a)
    heap = [(0, (), origin)]
    done = set()
    while heap:
        d, path, v = heapq.heappop(heap)
        if v in done:
            continue
        done.add(v)
        if v == target:
            return list(path)
        for a in out.get(v, ()):
            if a.head not in done:
                heapq.heappush(heap, (d + a.cost, path + (a.id,), a.head))
    return None


def greedy_sp_mcf(arcs: Iterable[Arc], origin: int, target: int, demand: int,
                  capacity: Mapping[int, int] | None = None) -> McfResult:
    """Min cost flow of ``demand`` units on an SP digraph by path saturation.

    Repeatedly takes a cheapest origin-target path with positive spare
    capacity and pushes the smaller of its bottleneck and the remaining
    demand. No backward residual arcs are used; on SP digraphs this is still
    optimal. ``capacity`` overrides the arc capacities.

    Raises:
        NotSeriesParallel: the digraph is not SP.
        PreconditionError: ``origin``/``target`` are not the SP terminals.
    """
    arcs = sorted(arcs, key=lambda a: a.id)
    if demand < 0:
        raise ValueError("demand must be nonnegative")
    tree = decompose(arcs)
    if (tree.origin, tree.target) != (origin, target):
        raise PreconditionError(
            f"terminals ({origin}, {target}) are not the SP origin/target "
            f"({tree.origin}, {tree.target})")
    cap = {a.id: (capacity[a.id] if capacity is not None else a.capacity) for a in arcs}
    if any(x < 0 for x in cap.values()):
        raise ValueError("capacities must be nonnegative")
    by_id = {a.id: a for a in arcs}
    flow = dict.fromkeys(cap, 0)
    left = demand
    while left > 0:
        path = _cheapest_path(arcs, cap, origin, target)
        if path is None:
            return McfResult(False)
        push = min(left, min(cap[i] for i in path))
        for i in path:
            cap[i] -= push
            flow[i] += push
        left -= push
    return McfResult(True, flow, sum(by_id[i].cost * x for i, x in flow.items()))


def two_scenario_demand(net: Network) -> tuple[TwoScenarioDemand, int, int]:
    """Demand pair with the index of the low and the high scenario."""
    if net.num_scenarios not in (1, 2):
        raise PreconditionError("reduce to at most two scenarios first")
    _, _, supplies = unique_terminals(net)
    lo = supplies.index(min(supplies))
    hi = len(supplies) - 1 - lo if len(supplies) == 2 else 0
    if supplies[lo] < 0:
        raise PreconditionError("supply at the origin is negative")
    return TwoScenarioDemand(supplies[lo], supplies[hi]), lo, hi


def solve_unique_sp(net: Network) -> SolveResult:
    """Optimal robust flow for an SP network whose scenarios differ only in demand.

    The network must be SP, every scenario must ship from the SP origin to
    the SP target (or nothing at all), and there are at most two scenarios.
    Infeasibility reports ``step=1`` when the excess cannot be routed on free
    arcs and ``step=2`` when the common demand does not fit afterwards.
    """
    tree = decompose(net)
    o, q = tree.origin, tree.target
    s, t, _ = unique_terminals(net)
    if s not in (None, o) or t not in (None, q):
        raise PreconditionError(
            f"source/sink ({s}, {t}) differ from the SP origin/target ({o}, {q})")
    d, lo, hi = two_scenario_demand(net)

    excess = solve_mcf_demand(net.num_vertices, net.free_arcs, o, q, d.excess)
    if not excess.optimal:
        return infeasible("unique-sp", step=1)
    f1 = {a.id: 0 for a in net.arcs}
    f1.update(excess.flow)
    residual = {a.id: a.capacity - f1[a.id] for a in net.arcs}
    common = greedy_sp_mcf(net.arcs, o, q, d.low, residual)
    if not common.optimal:
        return infeasible("unique-sp", step=2)
    low = dict(common.flow)
    high = {aid: low[aid] + f1[aid] for aid in low}
    flows = [None] * net.num_scenarios
    flows[lo] = low
    flows[hi] = high
    flow = RobustFlow(flows)
    load = {a.id: low[a.id] for a in net.fixed_arcs}
    return SolveResult(True, flow, robust_cost(net, flow), load, "unique-sp",
                       {"low": d.low, "high": d.high})
