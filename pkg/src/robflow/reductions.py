"""Hard instance families with brute-force oracles for their source problems.

``gen_partition_instance`` turns a Partition instance into an SP network with
two scenarios whose optimum is at most ``3w`` exactly when the numbers split
into two halves of sum ``w``. ``gen_sat_instance`` turns a (3,B2)-SAT formula
(every clause has three literals, every literal occurs exactly twice) into a
zero-cost network that admits a robust flow exactly when the formula is
satisfiable, either with several sinks or with a single sink.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

from robflow.errors import PreconditionError
from robflow.loadfix import exists_within
from robflow.network import Arc, ArcKind, Network
from robflow.spdp import dp_solve

MAX_BRUTE_N = 24

FIX, FREE = ArcKind.FIXED, ArcKind.FREE


# -- formulas -------------------------------------------------------------------

@dataclass(frozen=True)
class CnfFormula:
    """CNF over ``x_1..x_n`` in which every literal occurs at most twice.

    Literal ``i`` is ``x_i`` and ``-i`` its negation. This is the widest
    input the SAT networks accept; ``Sat3B2Formula`` is the strict form.
    """

    n: int
    clauses: tuple[tuple[int, ...], ...]

    def __init__(self, n: int, clauses: Iterable[Sequence[int]]):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in clauses))
        self.check()

    @property
    def m(self) -> int:
        return len(self.clauses)

    def occurrences(self) -> dict[int, int]:
        count: dict[int, int] = {}
        for c in self.clauses:
            for lit in c:
                count[lit] = count.get(lit, 0) + 1
        return count

    def check(self) -> None:
        if self.n < 1:
            raise ValueError("need at least one variable")
        for j, c in enumerate(self.clauses):
            if not c:
                raise ValueError(f"clause {j + 1} is empty")
            if len(set(c)) != len(c):
                raise ValueError(f"clause {j + 1} repeats a literal")
            for lit in c:
                if lit == 0 or abs(lit) > self.n:
                    raise ValueError(f"clause {j + 1}: literal {lit} out of range")
        for lit, k in self.occurrences().items():
            if k > 2:
                raise ValueError(f"literal {lit} occurs {k} times, more than 2")

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        """``assignment[i - 1]`` is the value of ``x_i``."""
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)


class Sat3B2Formula(CnfFormula):
    """Three literals per clause, every literal exactly twice, so ``m = 4n/3``."""

    def check(self) -> None:
        super().check()
        for j, c in enumerate(self.clauses):
            if len(c) != 3:
                raise ValueError(f"clause {j + 1} has {len(c)} literals, not 3")
        count = self.occurrences()
        for i in range(1, self.n + 1):
            for lit in (i, -i):
                if count.get(lit, 0) != 2:
                    raise ValueError(
                        f"literal {lit} occurs {count.get(lit, 0)} times, not 2")


def random_sat3b2(n: int, rng: random.Random, max_tries: int = 10_000) -> Sat3B2Formula:
    """Uniform shuffle of the ``4n`` literal slots into clauses.

    Shuffles with a literal twice in the same clause are rejected; a
    variable together with its negation in one clause is allowed.
    """
    if n % 3:
        raise ValueError("(3,B2) formulas need n divisible by 3")
    slots = [lit for i in range(1, n + 1) for lit in (i, i, -i, -i)]
    for _ in range(max_tries):
        rng.shuffle(slots)
        clauses = [tuple(slots[k:k + 3]) for k in range(0, len(slots), 3)]
        if all(len(set(c)) == 3 for c in clauses):
            return Sat3B2Formula(n, clauses)
    raise RuntimeError("no valid formula found")


def brute_sat(f: CnfFormula) -> bool:
    if f.n > MAX_BRUTE_N:
        raise PreconditionError(f"n = {f.n} exceeds the brute-force cap {MAX_BRUTE_N}")
    return any(f.satisfied_by(a) for a in product((False, True), repeat=f.n))


def parse_dimacs_cnf(text: str, strict: bool = True) -> CnfFormula:
    """Read ``p cnf n m`` followed by zero-terminated clauses.

    With ``strict`` the result must be a (3,B2) formula.
    """
    n = None
    lits: list[int] = []
    for line in text.splitlines():
        tok = line.split()
        if not tok or tok[0] in ("c", "%"):
            continue
        if tok[0] == "p":
            if len(tok) != 4 or tok[1] != "cnf":
                raise ValueError(f"bad problem line {line!r}")
            n = int(tok[2])
            continue
        lits.extend(int(t) for t in tok)
    if n is None:
        raise ValueError("missing 'p cnf' line")
    clauses, cur = [], []
    for lit in lits:
        if lit == 0:
            clauses.append(cur)
            cur = []
        else:
            cur.append(lit)
    if cur:
        raise ValueError("last clause is not terminated by 0")
    return (Sat3B2Formula if strict else CnfFormula)(n, clauses)


def write_dimacs_cnf(f: CnfFormula) -> str:
    lines = [f"p cnf {f.n} {f.m}"]
    lines += [" ".join(map(str, c)) + " 0" for c in f.clauses]
    return "\n".join(lines) + "\n"


# -- SAT networks ---------------------------------------------------------------

@dataclass(frozen=True)
class SatLayout:
    """Vertex numbering of a SAT network."""

    n: int
    m: int

    def v(self, i: int) -> int:  # i in 1..n+1
        return i

    def u(self, j: int) -> int:  # j in 1..m
        return self.n + 1 + j

    def w(self, lit: int, ell: int) -> int:  # ell in 1..4
        i = abs(lit)
        base = self.n + 1 + self.m + 8 * (i - 1) + (0 if lit > 0 else 4)
        return base + ell

    @property
    def t(self) -> int:
        return self.n + 1 + self.m + 8 * self.n + 1


def gen_sat_instance(f: CnfFormula, variant: str = "multi_sink") -> Network:
    """Zero-cost two-scenario network with a robust flow iff ``f`` is satisfiable.

    Each variable contributes a positive and a negative path between
    consecutive variable vertices; the two literal arcs on each path are
    fixed and stand for the literal's two occurrences, numbered in clause
    order. Scenario 1 ships one unit along the chain of variable vertices,
    which picks a truth assignment. Scenario 2 must reach every clause vertex
    through a literal arc that scenario 1 also uses.

    Any ``CnfFormula`` with ``m <= 2n`` is accepted, since the construction
    never depends on clause width; the collector ``t`` absorbs the ``2n - m``
    units of scenario 2 that reach no clause.

    ``variant="unique_sink"`` routes every sink into the last variable
    vertex. Besides the clause-to-sink arcs and the two shortcut arcs into
    the last negative and positive path, the collector ``t`` gets ``2n - m``
    parallel unit arcs to the sink so that it still absorbs its former
    demand; without them the sink cannot take in ``2n + 2`` units.
    """
    if variant not in ("multi_sink", "unique_sink"):
        raise ValueError(f"unknown variant {variant!r}")
    f.check()
    n, m = f.n, f.m
    if m > 2 * n:
        raise ValueError(f"{m} clauses exceed 2n = {2 * n}")
    L = SatLayout(n, m)
    arcs: list[Arc] = []

    def arc(tail: int, head: int, kind: ArcKind = FREE) -> None:
        arcs.append(Arc(len(arcs) + 1, tail, head, 1, 0, kind))

    for i in range(1, n + 1):
        for lit in (i, -i):
            chain = [L.v(i)] + [L.w(lit, ell) for ell in range(1, 5)] + [L.v(i + 1)]
            for k, (a, b) in enumerate(zip(chain, chain[1:])):
                arc(a, b, FIX if k in (1, 3) else FREE)
    seen: dict[int, int] = {}
    for j, clause in enumerate(f.clauses, start=1):
        for lit in clause:
            seen[lit] = seen.get(lit, 0) + 1
            arc(L.w(lit, 2 * seen[lit]), L.u(j))
    for i in range(1, n + 1):
        for lit in (i, -i):
            arc(L.v(1), L.w(lit, 1))
            arc(L.v(1), L.w(lit, 3))
            arc(L.w(lit, 2), L.t)
            arc(L.w(lit, 4), L.t)

    sink = L.v(n + 1)
    if variant == "multi_sink":
        b2 = {L.v(1): 2 * n, L.t: m - 2 * n}
        b2.update({L.u(j): -1 for j in range(1, m + 1)})
    else:
        for j in range(1, m + 1):
            arc(L.u(j), sink)
        arc(L.v(1), L.w(n, 4))
        arc(L.v(1), L.w(-n, 4))
        for _ in range(2 * n - m):
            arc(L.t, sink)
        b2 = {L.v(1): 2 * n + 2, sink: -(2 * n + 2)}
    b1 = {L.v(1): 1, sink: -1}
    return Network(L.t, arcs, [b1, b2])


# -- Partition ------------------------------------------------------------------

@dataclass(frozen=True)
class PartitionInstance:
    values: tuple[int, ...]

    def __init__(self, values: Iterable[int]):
        object.__setattr__(self, "values", tuple(int(s) for s in values))
        if any(s < 1 for s in self.values):
            raise ValueError("partition values must be positive")

    @property
    def total(self) -> int:
        return sum(self.values)

    @property
    def half(self) -> int:
        if self.total % 2:
            raise ValueError(f"sum {self.total} is odd")
        return self.total // 2


def brute_partition(p: PartitionInstance) -> bool:
    """Whether some subset sums to exactly half the total (odd totals: no)."""
    n = len(p.values)
    if n > MAX_BRUTE_N:
        raise PreconditionError(f"n = {n} exceeds the brute-force cap {MAX_BRUTE_N}")
    if p.total % 2:
        return False
    return any(sum(c) == p.half for r in range(n + 1) for c in combinations(p.values, r))


def gen_partition_instance(p: PartitionInstance) -> tuple[Network, int]:
    """Two-scenario SP network and threshold ``3w`` for values summing to ``2w``.

    Vertices ``1..n+1`` form a chain; link ``i`` has three parallel unit
    arcs of cost ``2 s_i`` (free), ``s_i`` (fixed) and ``0`` (free). A last
    free arc of cost ``2w`` leads to the extra vertex ``n + 2``. Scenario 1
    ships two units along the chain, scenario 2 one unit to the extra vertex.
    """
    w = p.half
    n = len(p.values)
    if n == 0:
        raise ValueError("need at least one value")
    arcs = []
    for i, s in enumerate(p.values, start=1):
        base = 3 * (i - 1)
        arcs.append(Arc(base + 1, i, i + 1, 1, 2 * s, FREE))
        arcs.append(Arc(base + 2, i, i + 1, 1, s, FIX))
        arcs.append(Arc(base + 3, i, i + 1, 1, 0, FREE))
    arcs.append(Arc(3 * n + 1, n + 1, n + 2, 1, 2 * w, FREE))
    balances = [{1: 2, n + 1: -2}, {1: 1, n + 2: -1}]
    return Network(n + 2, arcs, balances), 3 * w


def parse_partition(text: str) -> PartitionInstance:
    return PartitionInstance(int(t) for t in text.split())


# -- decisions --------------------------------------------------------------------

def decide_threshold(net: Network, beta: int, method: str = "enumeration",
                     budget: int | None = None) -> bool:
    """Whether a robust flow of cost at most ``beta`` exists.

    ``method`` is ``"enumeration"`` (any network) or ``"dp"`` (SP networks
    only; others raise ``NotSeriesParallel``).
    """
    if method == "enumeration":
        return exists_within(net, beta, budget)
    if method == "dp":
        res = dp_solve(net, budget=budget)
        return res.optimal and res.robust_cost <= beta
    raise ValueError(f"unknown decision method {method!r}")
