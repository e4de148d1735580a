"""One entry point over all exact solvers."""

from __future__ import annotations

from robflow.errors import NotSeriesParallel, PreconditionError
from robflow.loadfix import extend_scenarios, reduce_scenarios, solve_enumeration, unique_terminals
from robflow.network import Network, SolveResult, robust_cost
from robflow.spdec import SpTree, decompose
from robflow.spdp import dp_solve
from robflow.spfast import solve_unique_sp

METHODS = ("auto", "enum", "dp", "unique-sp")


def solve_unique_pipeline(net: Network) -> SolveResult:
    """Keep the extreme-demand scenarios, solve them, rebuild all scenarios."""
    reduced, mapping = reduce_scenarios(net)
    res = solve_unique_sp(reduced)
    if not res.optimal:
        return res
    flow = extend_scenarios(net, res.flow, mapping)
    load = {a.id: flow[0][a.id] for a in net.fixed_arcs}
    return SolveResult(True, flow, robust_cost(net, flow), load, "unique-sp", res.info)


def has_sp_terminals(net: Network, tree: SpTree) -> bool:
    """Whether all supply leaves the SP origin and all demand ends at the SP target."""
    try:
        s, t, _ = unique_terminals(net)
    except PreconditionError:
        return False
    return s in (None, tree.origin) and t in (None, tree.target)


def choose_method(net: Network) -> str:
    if not net.arcs:
        return "enum"
    try:
        tree = decompose(net)
    except NotSeriesParallel:
        return "enum"
    return "unique-sp" if has_sp_terminals(net, tree) else "dp"


def solve(net: Network, method: str = "auto", budget: int | None = None) -> SolveResult:
    """Optimal robust flow with the requested method.

    ``auto`` uses the polynomial solver when the network is SP with all
    supply at its origin and all demand at its target, the SP dynamic
    program for other SP networks, and enumeration otherwise.

    Raises:
        PreconditionError: the instance is outside the method's class.
        NotSeriesParallel: ``dp`` or ``unique-sp`` on a non-SP network.
        BudgetExceeded: the enumeration or label budget would be exceeded.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    if method == "auto":
        method = choose_method(net)
    if method == "enum":
        return solve_enumeration(net, budget)
    if method == "dp":
        return dp_solve(net, budget=budget)
    return solve_unique_pipeline(net)
