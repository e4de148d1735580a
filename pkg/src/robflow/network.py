"""Core data model: networks with fixed/free arcs, robust flows, cost reports.

Vertices are the integers ``1..num_vertices``. Arcs carry stable integer ids
and may be parallel, so nothing in the package ever addresses an arc by its
``(tail, head)`` pair. Scenario indices are 0-based in the API and 1-based in
files and printed reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from robflow.errors import FlowStructureError, NetworkError

# Sum of c(a) * u(a) must stay representable as a 64-bit signed integer with
# headroom; the DP budget coordinates are bounded by it.
MAX_TOTAL_COST = 2**62


class ArcKind(str, Enum):
    FIXED = "fix"
    FREE = "free"


@dataclass(frozen=True)
class Arc:
    id: int
    tail: int
    head: int
    capacity: int
    cost: int
    kind: ArcKind = ArcKind.FREE

    @property
    def fixed(self) -> bool:
        return self.kind is ArcKind.FIXED


def _sparse(balance: Mapping[int, int]) -> dict[int, int]:
    return {v: int(b) for v, b in sorted(balance.items()) if b != 0}


@dataclass(frozen=True, eq=False)
class Network:
    """A robust min cost flow instance.

    ``balances[k]`` holds the nonzero balances of scenario ``k``; vertices
    missing from the mapping have balance 0.
    """

    num_vertices: int
    arcs: tuple[Arc, ...]
    balances: tuple[Mapping[int, int], ...]

    def __init__(self, num_vertices: int, arcs: Iterable[Arc],
                 balances: Sequence[Mapping[int, int]]):
        object.__setattr__(self, "num_vertices", int(num_vertices))
        object.__setattr__(self, "arcs", tuple(arcs))
        object.__setattr__(self, "balances", tuple(_sparse(b) for b in balances))
        self._check()

    def _check(self) -> None:
        n = self.num_vertices
        if n < 0:
            raise NetworkError("negative vertex count")
        if not self.balances:
            raise NetworkError("a network needs at least one scenario")
        seen = set()
        total = 0
        for a in self.arcs:
            if a.id in seen:
                raise NetworkError(f"duplicate arc id {a.id}")
            seen.add(a.id)
            if not (1 <= a.tail <= n and 1 <= a.head <= n):
                raise NetworkError(f"arc {a.id} has an endpoint outside 1..{n}")
            if a.tail == a.head:
                raise NetworkError(f"arc {a.id} is a self-loop")
            if a.capacity < 0 or a.cost < 0:
                raise NetworkError(f"arc {a.id} has negative capacity or cost")
            total += a.capacity * a.cost
        if total > MAX_TOTAL_COST:
            raise NetworkError(f"total cost bound {total} exceeds 2^62")
        for k, bal in enumerate(self.balances):
            for v in bal:
                if not 1 <= v <= n:
                    raise NetworkError(f"scenario {k + 1}: balance at unknown vertex {v}")
            if sum(bal.values()) != 0:
                raise NetworkError(
                    f"scenario {k + 1}: balances sum to {sum(bal.values())}, not 0")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Network):
            return NotImplemented
        return (self.num_vertices == other.num_vertices and self.arcs == other.arcs
                and self.balances == other.balances)

    def __repr__(self) -> str:
        return (f"Network(|V|={self.num_vertices}, |A|={len(self.arcs)}, "
                f"|fix|={len(self.fixed_arcs)}, scenarios={self.num_scenarios})")

    @property
    def num_scenarios(self) -> int:
        return len(self.balances)

    @property
    def vertices(self) -> range:
        return range(1, self.num_vertices + 1)

    @cached_property
    def arc_by_id(self) -> dict[int, Arc]:
        return {a.id: a for a in self.arcs}

    @cached_property
    def fixed_arcs(self) -> tuple[Arc, ...]:
        return tuple(a for a in self.arcs if a.fixed)

    @cached_property
    def free_arcs(self) -> tuple[Arc, ...]:
        return tuple(a for a in self.arcs if not a.fixed)

    def balance(self, scenario: int, v: int) -> int:
        return self.balances[scenario].get(v, 0)

    @property
    def total_cost_bound(self) -> int:
        """Sum of c(a) * u(a), an upper bound on any scenario cost."""
        return sum(a.cost * a.capacity for a in self.arcs)


@dataclass(frozen=True)
class RobustFlow:
    """One arc-flow mapping per scenario."""

    scenarios: tuple[Mapping[int, int], ...]

    def __init__(self, scenarios: Iterable[Mapping[int, int]]):
        object.__setattr__(self, "scenarios", tuple(dict(s) for s in scenarios))

    def __getitem__(self, k: int) -> Mapping[int, int]:
        return self.scenarios[k]

    def __len__(self) -> int:
        return len(self.scenarios)

    def load(self, net: Network) -> dict[int, int]:
        """Fixed-arc values of the first scenario."""
        return {a.id: self.scenarios[0][a.id] for a in net.fixed_arcs}


@dataclass(frozen=True)
class CostReport:
    scenario_costs: tuple[int, ...]
    robust_cost: int
    argmax: int


@dataclass(frozen=True)
class Violation:
    family: str  # "capacity" | "conservation" | "consistency"
    scenario: int | None
    arc: int | None = None
    vertex: int | None = None
    detail: str = ""

    def __str__(self) -> str:
        where = []
        if self.scenario is not None:
            where.append(f"scenario {self.scenario + 1}")
        if self.arc is not None:
            where.append(f"arc {self.arc}")
        if self.vertex is not None:
            where.append(f"vertex {self.vertex}")
        return f"{self.family} violation at {', '.join(where)}: {self.detail}"


def _check_structure(net: Network, flow: RobustFlow) -> None:
    if len(flow) != net.num_scenarios:
        raise FlowStructureError(
            f"flow has {len(flow)} scenarios, network has {net.num_scenarios}")
    ids = set(net.arc_by_id)
    for k, fk in enumerate(flow.scenarios):
        missing = ids - set(fk)
        extra = set(fk) - ids
        if missing:
            raise FlowStructureError(
                f"scenario {k + 1}: no flow value for arcs {sorted(missing)}")
        if extra:
            raise FlowStructureError(f"scenario {k + 1}: unknown arcs {sorted(extra)}")


def validate_robust_flow(net: Network, flow: RobustFlow) -> list[Violation]:
    """Check capacity, conservation and consistency; return every violation.

    An empty list means the flow is a feasible robust flow. Structural
    mismatches (missing arcs or scenarios) raise ``FlowStructureError``.
    """
    _check_structure(net, flow)
    out: list[Violation] = []
    for k, fk in enumerate(flow.scenarios):
        net_out = dict.fromkeys(net.vertices, 0)
        for a in net.arcs:
            x = fk[a.id]
            if not 0 <= x <= a.capacity:
                out.append(Violation("capacity", k, arc=a.id,
                                     detail=f"value {x} outside [0, {a.capacity}]"))
            net_out[a.tail] += x
            net_out[a.head] -= x
        for v in net.vertices:
            b = net.balance(k, v)
            if net_out[v] != b:
                out.append(Violation("conservation", k, vertex=v,
                                     detail=f"net outflow {net_out[v]} != balance {b}"))
    for a in net.fixed_arcs:
        values = [fk[a.id] for fk in flow.scenarios]
        if len(set(values)) > 1:
            out.append(Violation("consistency", None, arc=a.id,
                                 detail=f"values {values} differ across scenarios"))
    return out


def robust_cost(net: Network, flow: RobustFlow) -> CostReport:
    _check_structure(net, flow)
    costs = tuple(sum(a.cost * fk[a.id] for a in net.arcs) for fk in flow.scenarios)
    best = max(costs)
    return CostReport(costs, best, costs.index(best))


def restrict_to_subgraph(net: Network, arc_ids: Iterable[int],
                         balance_override: Sequence[Mapping[int, int]] | None = None
                         ) -> Network:
    """Sub-network on ``arc_ids`` with the vertex numbering kept intact.

    ``balance_override[k]`` replaces the scenario-k balance of each vertex it
    names; other vertices keep their balance. The result is re-validated, so
    an override that unbalances a scenario raises ``NetworkError``.
    """
    keep = set(arc_ids)
    unknown = keep - set(net.arc_by_id)
    if unknown:
        raise NetworkError(f"unknown arc ids {sorted(unknown)}")
    arcs = [a for a in net.arcs if a.id in keep]
    balances = [dict(b) for b in net.balances]
    if balance_override is not None:
        if len(balance_override) != net.num_scenarios:
            raise NetworkError("override must give one mapping per scenario")
        for k, over in enumerate(balance_override):
            for v, b in over.items():
                if not 1 <= v <= net.num_vertices:
                    raise NetworkError(f"override names unknown vertex {v}")
                balances[k][v] = b
    return Network(net.num_vertices, arcs, balances)


def zero_flow(net: Network) -> RobustFlow:
    return RobustFlow({a.id: 0 for a in net.arcs} for _ in range(net.num_scenarios))


@dataclass(frozen=True)
class SolveResult:
    """Outcome of an exact solver.

    ``flow``, ``cost`` and ``load`` are set only when ``optimal``.
    """

    optimal: bool
    flow: RobustFlow | None = None
    cost: CostReport | None = None
    load: Mapping[int, int] | None = None
    method: str = ""
    info: dict = field(default_factory=dict)

    @property
    def robust_cost(self) -> int | None:
        return self.cost.robust_cost if self.cost else None


def infeasible(method: str, **info) -> SolveResult:
    return SolveResult(False, method=method, info=info)
