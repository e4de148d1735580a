"""Text formats for instances, flows and cost reports.

Instance files::

    c <comment>
    p robmcf <num vertices> <num arcs> <num scenarios>
    a <id> <tail> <head> <capacity> <cost> <fix|free>
    b <scenario> <vertex> <balance>

Flow files hold ``f <scenario> <arc id> <value>`` lines; arcs not mentioned
carry 0. Vertices and scenarios are 1-based. Writers emit a canonical form:
arcs by id, balances by (scenario, vertex), flows by (scenario, arc id),
zeros omitted, one trailing newline.
"""

from __future__ import annotations

from typing import Iterable

from robflow.errors import NetworkError, ParseError
from robflow.network import Arc, ArcKind, CostReport, Network, RobustFlow, SolveResult


def _ints(tok: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tok]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tok)!r}", lineno) from None


def _records(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tok = raw.split()
        if not tok or tok[0] == "c":
            continue
        yield lineno, tok


def parse_instance(text: str) -> Network:
    """Read an instance file; errors name the offending line."""
    header = None
    arcs: list[Arc] = []
    ids: set[int] = set()
    balances: list[dict[int, int]] = []
    last_line: list[int] = []
    for lineno, tok in _records(text):
        kind = tok[0]
        if header is None:
            if kind != "p":
                raise ParseError("expected the problem line 'p robmcf ...' first", lineno)
            if len(tok) != 5 or tok[1] != "robmcf":
                raise ParseError("problem line must be 'p robmcf <V> <A> <scenarios>'", lineno)
            header = _ints(tok[2:], lineno)
            if min(header) < 0 or header[2] < 1:
                raise ParseError("sizes must be nonnegative with at least one scenario", lineno)
            balances = [{} for _ in range(header[2])]
            last_line = [lineno] * header[2]
            continue
        n, m, k = header
        if kind == "p":
            raise ParseError("second problem line", lineno)
        if kind == "a":
            if len(tok) != 7:
                raise ParseError("arc line must be 'a <id> <tail> <head> <cap> <cost> <fix|free>'",
                                 lineno)
            aid, tail, head, cap, cost = _ints(tok[1:6], lineno)
            if tok[6] not in ("fix", "free"):
                raise ParseError(f"arc kind must be 'fix' or 'free', got {tok[6]!r}", lineno)
            if aid < 1:
                raise ParseError(f"arc id {aid} is not positive", lineno)
            if aid in ids:
                raise ParseError(f"duplicate arc id {aid}", lineno)
            if not (1 <= tail <= n and 1 <= head <= n):
                raise ParseError(f"arc {aid} has an endpoint outside 1..{n}", lineno)
            if tail == head:
                raise ParseError(f"arc {aid} is a self-loop", lineno)
            if cap < 0 or cost < 0:
                raise ParseError(f"arc {aid} has negative capacity or cost", lineno)
            ids.add(aid)
            arcs.append(Arc(aid, tail, head, cap, cost, ArcKind(tok[6])))
        elif kind == "b":
            if len(tok) != 4:
                raise ParseError("balance line must be 'b <scenario> <vertex> <balance>'", lineno)
            s, v, b = _ints(tok[1:], lineno)
            if not 1 <= s <= k:
                raise ParseError(f"scenario {s} outside 1..{k}", lineno)
            if not 1 <= v <= n:
                raise ParseError(f"vertex {v} outside 1..{n}", lineno)
            if v in balances[s - 1]:
                raise ParseError(f"second balance for vertex {v} in scenario {s}", lineno)
            balances[s - 1][v] = b
            last_line[s - 1] = lineno
        else:
            raise ParseError(f"unknown line type {kind!r}", lineno)
    if header is None:
        raise ParseError("missing problem line")
    if len(arcs) != header[1]:
        raise ParseError(f"problem line announces {header[1]} arcs, found {len(arcs)}")
    for s, bal in enumerate(balances):
        total = sum(bal.values())
        if total:
            raise ParseError(f"scenario {s + 1}: balances sum to {total}, not 0", last_line[s])
    try:
        return Network(header[0], sorted(arcs, key=lambda a: a.id), balances)
    except NetworkError as exc:
        raise ParseError(str(exc)) from exc


def write_instance(net: Network, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" if c else "c" for c in comments]
    lines.append(f"p robmcf {net.num_vertices} {len(net.arcs)} {net.num_scenarios}")
    for a in sorted(net.arcs, key=lambda a: a.id):
        lines.append(f"a {a.id} {a.tail} {a.head} {a.capacity} {a.cost} {a.kind.value}")
    for k, bal in enumerate(net.balances):
        for v in sorted(bal):
            lines.append(f"b {k + 1} {v} {bal[v]}")
    return "\n".join(lines) + "\n"


def parse_flow(text: str, net: Network) -> RobustFlow:
    """Read flow lines against ``net``; unmentioned arcs get 0."""
    flows = [{a.id: 0 for a in net.arcs} for _ in range(net.num_scenarios)]
    seen: set[tuple[int, int]] = set()
    for lineno, tok in _records(text):
        if tok[0] != "f" or len(tok) != 4:
            raise ParseError("flow line must be 'f <scenario> <arc id> <value>'", lineno)
        s, aid, x = _ints(tok[1:], lineno)
        if not 1 <= s <= net.num_scenarios:
            raise ParseError(f"scenario {s} outside 1..{net.num_scenarios}", lineno)
        if aid not in net.arc_by_id:
            raise ParseError(f"unknown arc id {aid}", lineno)
        if x < 0:
            raise ParseError(f"negative flow value {x} on arc {aid}", lineno)
        if (s, aid) in seen:
            raise ParseError(f"second value for arc {aid} in scenario {s}", lineno)
        seen.add((s, aid))
        flows[s - 1][aid] = x
    return RobustFlow(flows)


def write_flow(flow: RobustFlow, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" if c else "c" for c in comments]
    for k, fk in enumerate(flow.scenarios):
        for aid in sorted(fk):
            if fk[aid]:
                lines.append(f"f {k + 1} {aid} {fk[aid]}")
    return "\n".join(lines) + "\n" if lines else ""


def format_cost_report(report: CostReport) -> str:
    lines = [f"scenario {k + 1} cost {c}" for k, c in enumerate(report.scenario_costs)]
    lines.append(f"robust cost {report.robust_cost} (scenario {report.argmax + 1})")
    return "\n".join(lines) + "\n"


def format_result(result: SolveResult) -> str:
    """Solver report printed by the command line tool."""
    head = f"method {result.method}\n"
    if not result.optimal:
        return head + "status infeasible\n"
    return head + "status optimal\n" + format_cost_report(result.cost)
