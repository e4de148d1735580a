"""Series-parallel recognition and SP trees.

``decompose`` repeatedly merges a bundle of two parallel edges or a vertex
with exactly one entering and one leaving edge, recording each merge as a P-
or S-vertex of the tree, until a single edge from origin to target remains.
Every current edge is labelled by the smallest arc id it contains; among all
applicable merges the one whose smallest label is lowest is applied first
(parallel before series on a tie) so trees are reproducible. The quadratic
cost of rescanning is irrelevant at the sizes handled here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping

from robflow.errors import NotSeriesParallel
from robflow.network import Arc, ArcKind, Network


@dataclass(frozen=True)
class SpNode:
    kind: str  # "L", "S" or "P"
    origin: int
    target: int
    arc: int | None = None
    left: int | None = None
    right: int | None = None


@dataclass(frozen=True)
class SpTree:
    """Rooted binary decomposition tree; ``nodes[i]`` children have indices < i."""

    nodes: tuple[SpNode, ...]
    root: int

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def origin(self) -> int:
        return self.nodes[self.root].origin

    @property
    def target(self) -> int:
        return self.nodes[self.root].target

    def leaves(self, i: int | None = None) -> list[int]:
        """Arc ids below tree vertex ``i`` (the root by default), left to right."""
        out, stack = [], [self.root if i is None else i]
        while stack:
            node = self.nodes[stack.pop()]
            if node.kind == "L":
                out.append(node.arc)
            else:
                stack.extend((node.right, node.left))
        return out

    def postorder(self) -> list[int]:
        out, stack = [], [(self.root, False)]
        while stack:
            i, expanded = stack.pop()
            node = self.nodes[i]
            if expanded or node.kind == "L":
                out.append(i)
            else:
                stack.append((i, True))
                stack.append((node.right, False))
                stack.append((node.left, False))
        return out

    def to_text(self, i: int | None = None) -> str:
        """``L(arc) | S(left,right) | P(left,right)``."""
        i = self.root if i is None else i
        parts: list[str] = []
        stack: list[object] = [i]
        while stack:
            item = stack.pop()
            if isinstance(item, str):
                parts.append(item)
                continue
            node = self.nodes[item]
            if node.kind == "L":
                parts.append(f"L({node.arc})")
            else:
                stack.extend([")", node.right, ",", node.left, f"{node.kind}("])
        return "".join(parts)


def _endpoints(arcs: Iterable[Arc]) -> list[tuple[int, int, int]]:
    return [(a.id, a.tail, a.head) for a in arcs]


def decompose(graph: Network | Iterable[Arc]) -> SpTree:
    """SP tree of a network's (or an arc list's) digraph.

    Raises ``NotSeriesParallel`` with a witness when no tree exists and
    ``ValueError`` for an empty digraph.
    """
    arcs = graph.arcs if isinstance(graph, Network) else tuple(graph)
    if not arcs:
        raise ValueError("cannot decompose an empty digraph")
    indeg: dict[int, int] = {}
    outdeg: dict[int, int] = {}
    for a in arcs:
        outdeg[a.tail] = outdeg.get(a.tail, 0) + 1
        indeg[a.head] = indeg.get(a.head, 0) + 1
        outdeg.setdefault(a.head, 0)
        indeg.setdefault(a.tail, 0)
    sources = sorted(v for v, d in indeg.items() if d == 0)
    sinks = sorted(v for v, d in outdeg.items() if d == 0)
    reps = tuple(sorted(a.id for a in arcs))
    if len(sources) != 1 or len(sinks) != 1:
        raise NotSeriesParallel(
            f"need exactly one origin and one target, found sources {sources} "
            f"and sinks {sinks}", reps)
    origin, target = sources[0], sinks[0]

    nodes: list[SpNode] = []
    # live edges: label -> (tree index, tail, head)
    live: dict[int, tuple[int, int, int]] = {}
    for aid, u, v in sorted(_endpoints(arcs)):
        nodes.append(SpNode("L", u, v, arc=aid))
        live[aid] = (len(nodes) - 1, u, v)

    while len(live) > 1:
        out_e: dict[int, list[int]] = {}
        in_e: dict[int, list[int]] = {}
        bundles: dict[tuple[int, int], list[int]] = {}
        for lab in sorted(live):
            _, u, v = live[lab]
            out_e.setdefault(u, []).append(lab)
            in_e.setdefault(v, []).append(lab)
            bundles.setdefault((u, v), []).append(lab)
        best = None  # (min label, order, payload)
        for (u, v), labs in bundles.items():
            if len(labs) >= 2:
                cand = (labs[0], 0, ("P", labs[0], labs[1]))
                best = cand if best is None or cand < best else best
        for w, ins in in_e.items():
            outs = out_e.get(w, [])
            if w in (origin, target) or len(ins) != 1 or len(outs) != 1:
                continue
            cand = (min(ins[0], outs[0]), 1, ("S", ins[0], outs[0]))
            best = cand if best is None or cand < best else best
        if best is None:
            raise NotSeriesParallel("digraph is not series-parallel",
                                    tuple(sorted(live)))
        kind, x, y = best[2]
        ix, ux, vx = live.pop(x)
        iy, uy, vy = live.pop(y)
        if kind == "P":
            nodes.append(SpNode("P", ux, vx, left=ix, right=iy))
            live[min(x, y)] = (len(nodes) - 1, ux, vx)
        else:
            nodes.append(SpNode("S", ux, vy, left=ix, right=iy))
            live[min(x, y)] = (len(nodes) - 1, ux, vy)

    (idx, u, v), = live.values()
    if (u, v) != (origin, target):
        raise NotSeriesParallel("digraph is not series-parallel", tuple(sorted(live)))
    return SpTree(tuple(nodes), idx)


def evaluate(tree: SpTree) -> dict[int, tuple[int, int]]:
    """Perform the compositions bottom-up and return ``arc id -> (tail, head)``.

    Each leaf starts on two fresh vertices; S contracts left target with right
    origin and P contracts both origins and both targets. The contracted
    classes are then named by the vertex ids recorded in the tree, which must
    be consistent, otherwise ``ValueError`` is raised.
    """
    parent: list[int] = []

    def fresh() -> int:
        parent.append(len(parent))
        return len(parent) - 1

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        parent[find(x)] = find(y)

    ends: dict[int, tuple[int, int]] = {}
    leaf_ends: dict[int, tuple[int, int]] = {}
    for i in tree.postorder():
        node = tree.nodes[i]
        if node.kind == "L":
            o, q = fresh(), fresh()
            leaf_ends[node.arc] = (o, q)
        elif node.kind == "S":
            (o, m1), (m2, q) = ends[node.left], ends[node.right]
            union(m1, m2)
        elif node.kind == "P":
            (o, q), (o2, q2) = ends[node.left], ends[node.right]
            union(o, o2)
            union(q, q2)
        else:
            raise ValueError(f"unknown tree vertex kind {node.kind!r}")
        ends[i] = (o, q)

    names: dict[int, int] = {}

    def name(cls: int, vid: int) -> None:
        root = find(cls)
        if names.setdefault(root, vid) != vid:
            raise ValueError(f"tree labels vertex class with both {names[root]} and {vid}")

    for i, node in enumerate(tree.nodes):
        if i in ends:
            o, q = ends[i]
            name(o, node.origin)
            name(q, node.target)
    return {aid: (names[find(o)], names[find(q)]) for aid, (o, q) in leaf_ends.items()}


# -- random instances ------------------------------------------------------------

def random_sp_tree(n_arcs: int, rng: random.Random, p_series: float = 0.5) -> SpTree:
    """Random tree with ``n_arcs`` leaves grown by merging random components.

    Leaves carry arc ids ``1..n_arcs``; vertices are numbered ``1..|V|`` in
    order of first appearance along a left-to-right walk, origin first.
    """
    if n_arcs < 1:
        raise ValueError("need at least one arc")
    shapes: list[object] = [("L", i + 1) for i in range(n_arcs)]
    while len(shapes) > 1:
        i, j = rng.sample(range(len(shapes)), 2)
        kind = "S" if rng.random() < p_series else "P"
        merged = (kind, shapes[i], shapes[j])
        shapes = [s for k, s in enumerate(shapes) if k not in (i, j)] + [merged]

    nodes: list[SpNode] = []
    counter = [0]

    def new_vertex() -> int:
        counter[0] += 1
        return counter[0]

    def build(shape, o: int, q: int | None) -> tuple[int, int]:
        """Lay out ``shape`` from origin ``o``; returns (tree index, target)."""
        if shape[0] == "L":
            q = new_vertex() if q is None else q
            nodes.append(SpNode("L", o, q, arc=shape[1]))
            return len(nodes) - 1, q
        kind, left, right = shape
        if kind == "S":
            il, mid = build(left, o, None)
            ir, q = build(right, mid, q)
            nodes.append(SpNode("S", o, q, left=il, right=ir))
        else:
            il, q = build(left, o, q)
            ir, _ = build(right, o, q)
            nodes.append(SpNode("P", o, q, left=il, right=ir))
        return len(nodes) - 1, q

    origin = new_vertex()
    root, _ = build(shapes[0], origin, None)
    return SpTree(tuple(nodes), root)


def random_sp_instance(n_arcs: int, max_capacity: int, max_cost: int, num_scenarios: int,
                       mode: str = "unique", rng: random.Random | None = None,
                       seed: int = 0, p_fixed: float = 0.5, max_demand: int | None = None,
                       min_capacity: int = 0) -> tuple[Network, SpTree]:
    """Random network on a random SP digraph together with its generating tree.

    ``mode="unique"`` puts demand ``d`` at origin/target in every scenario,
    with demands drawn from ``0..max_demand`` and sorted ascending.
    ``mode="multi"`` ships random units from a lower- to a higher-numbered
    random vertex, giving zero-sum balances anywhere in the graph.
    """
    rng = rng or random.Random(seed)
    tree = random_sp_tree(n_arcs, rng)
    ends = evaluate(tree)
    arcs = []
    for aid in sorted(ends):
        u, v = ends[aid]
        kind = ArcKind.FIXED if rng.random() < p_fixed else ArcKind.FREE
        arcs.append(Arc(aid, u, v, rng.randint(min_capacity, max_capacity),
                        rng.randint(0, max_cost), kind))
    n_vertices = max(max(e) for e in ends.values())
    if max_demand is None:
        max_demand = max_capacity * 2
    balances: list[dict[int, int]] = []
    if mode == "unique":
        demands = sorted(rng.randint(0, max_demand) for _ in range(num_scenarios))
        for d in demands:
            balances.append({tree.origin: d, tree.target: -d} if d else {})
    elif mode == "multi":
        for _ in range(num_scenarios):
            bal: dict[int, int] = {}
            for _ in range(rng.randint(0, max_demand)):
                v, w = sorted(rng.sample(range(1, n_vertices + 1), 2))
                bal[v] = bal.get(v, 0) + 1
                bal[w] = bal.get(w, 0) - 1
            balances.append(bal)
    else:
        raise ValueError(f"unknown balance mode {mode!r}")
    return Network(n_vertices, arcs, balances), tree


def sp_digraph_matches(tree: SpTree, arcs: Mapping[int, tuple[int, int]]) -> bool:
    return evaluate(tree) == dict(arcs)
