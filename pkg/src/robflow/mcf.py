"""Single-scenario integral minimum cost flow.

Successive shortest augmenting paths with vertex potentials. Every instance
here has nonnegative arc costs, so the all-zero potential is a valid start
and Dijkstra applies throughout. Among shortest augmenting paths the one with
the lexicographically smallest sequence of arc ids is taken (forward residual
arcs before backward ones on the same id), which makes outputs reproducible.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Mapping

from robflow.errors import NetworkError
from robflow.network import Arc


@dataclass(frozen=True)
class McfInstance:
    num_vertices: int
    arcs: tuple[Arc, ...]
    balance: Mapping[int, int]

    def __init__(self, num_vertices: int, arcs: Iterable[Arc], balance: Mapping[int, int]):
        object.__setattr__(self, "num_vertices", num_vertices)
        object.__setattr__(self, "arcs", tuple(arcs))
        object.__setattr__(self, "balance", {v: b for v, b in balance.items() if b})
        if sum(self.balance.values()) != 0:
            raise NetworkError("MCF balances must sum to zero")
        for a in self.arcs:
            if a.capacity < 0 or a.cost < 0:
                raise NetworkError(f"arc {a.id} has negative capacity or cost")


@dataclass(frozen=True)
class McfResult:
    optimal: bool
    flow: dict[int, int] | None = None
    cost: int | None = None


class _Residual:
    """Residual graph; edge ``2i`` is arc ``i`` forward, ``2i+1`` its reverse."""

    def __init__(self, n_nodes: int):
        self.adj: list[list[int]] = [[] for _ in range(n_nodes)]
        self.to: list[int] = []
        self.cap: list[int] = []
        self.cost: list[int] = []
        self.key: list[int] = []

    def add(self, u: int, v: int, cap: int, cost: int, key: int) -> None:
        for a, b, c, w, k in ((u, v, cap, cost, 2 * key), (v, u, 0, -cost, 2 * key + 1)):
            self.adj[a].append(len(self.to))
            self.to.append(b)
            self.cap.append(c)
            self.cost.append(w)
            self.key.append(k)


def _shortest_path(g: _Residual, pot: list[int], s: int, t: int):
    """Dijkstra on reduced costs ordered by (distance, arc-key sequence)."""
    n = len(g.adj)
    dist: list[int | None] = [None] * n
    pred: list[int] = [-1] * n
    heap = [(0, (), s, -1)]
    best: dict[int, tuple] = {s: (0, ())}
    while heap:
        d, path, u, e_in = heapq.heappop(heap)
        if dist[u] is not None:
            continue
        dist[u] = d
        pred[u] = e_in
        for e in g.adj[u]:
            if g.cap[e] <= 0:
                continue
            v = g.to[e]
            if dist[v] is not None:
                continue
            nd = d + g.cost[e] + pot[u] - pot[v]
            label = (nd, path + (g.key[e],))
            old = best.get(v)
            if old is None or label < old:
                best[v] = label
                heapq.heappush(heap, (nd, label[1], v, e))
    return dist, pred


def _run(num_vertices: int, arcs: tuple[Arc, ...], balance: Mapping[int, int]) -> McfResult:
    supply = sum(b for b in balance.values() if b > 0)
    n = num_vertices
    S, T = 0, n + 1
    g = _Residual(n + 2)
    order = sorted(range(len(arcs)), key=lambda i: arcs[i].id)
    rank = {i: r for r, i in enumerate(order)}
    # super-source arcs sort below every real arc, super-sink arcs above
    for i, a in enumerate(arcs):
        if not (1 <= a.tail <= n and 1 <= a.head <= n):
            raise NetworkError(f"arc {a.id} has an endpoint outside 1..{n}")
        g.add(a.tail, a.head, a.capacity, a.cost, rank[i])
    for v in sorted(balance):
        b = balance[v]
        if b > 0:
            g.add(S, v, b, 0, v - n - 1)
        elif b < 0:
            g.add(v, T, -b, 0, len(arcs) + v)
    pot = [0] * (n + 2)
    shipped = 0
    while shipped < supply:
        dist, pred = _shortest_path(g, pot, S, T)
        if dist[T] is None:
            return McfResult(False)
        far = max(d for d in dist if d is not None)
        for v in range(n + 2):
            pot[v] += dist[v] if dist[v] is not None else far
        push = supply - shipped
        v = T
        while v != S:
            e = pred[v]
            push = min(push, g.cap[e])
            v = g.to[e ^ 1]
        v = T
        while v != S:
            e = pred[v]
            g.cap[e] -= push
            g.cap[e ^ 1] += push
            v = g.to[e ^ 1]
        shipped += push
    flow = {a.id: g.cap[2 * i + 1] for i, a in enumerate(arcs)}
    cost = sum(a.cost * flow[a.id] for a in arcs)
    return McfResult(True, flow, cost)


def solve_mcf(inst: McfInstance) -> McfResult:
    """Optimal integral flow meeting ``inst.balance``, or an infeasible result."""
    return _run(inst.num_vertices, inst.arcs, inst.balance)


def solve_mcf_demand(num_vertices: int, arcs: Iterable[Arc], source: int, sink: int,
                     demand: int) -> McfResult:
    """Send ``demand`` units from ``source`` to ``sink`` at minimum cost."""
    if demand < 0:
        raise ValueError("demand must be nonnegative")
    arcs = tuple(arcs)
    if demand == 0 or source == sink:
        return McfResult(True, {a.id: 0 for a in arcs}, 0)
    return _run(num_vertices, arcs, {source: demand, sink: -demand})
