import random

import pytest

from oracles import cheapest_path
from robflow.errors import NotSeriesParallel, PreconditionError
from robflow.loadfix import solve_enumeration
from robflow.mcf import solve_mcf_demand
from robflow.network import (Arc, ArcKind, Network, restrict_to_subgraph, robust_cost,
                             validate_robust_flow)
from robflow.spdec import random_sp_instance
from robflow.spdp import dp_solve
from robflow.spfast import TwoScenarioDemand, greedy_sp_mcf, solve_unique_sp

FIX, FREE = ArcKind.FIXED, ArcKind.FREE


def unique_instances(seed, count, n_scenarios=2, max_arcs=10):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_sp_instance(rng.randint(1, max_arcs), 3, 5, n_scenarios, mode="unique",
                                 rng=rng, max_demand=4, min_capacity=rng.choice([0, 1]))


class TestGreedy:
    def test_zero_demand(self):
        res = greedy_sp_mcf([Arc(1, 1, 2, 1, 3)], 1, 2, 0)
        assert res.optimal and res.flow == {1: 0} and res.cost == 0

    def test_two_parallel_arcs(self):
        res = greedy_sp_mcf([Arc(1, 1, 2, 1, 1), Arc(2, 1, 2, 1, 5)], 1, 2, 2)
        assert res.flow == {1: 1, 2: 1} and res.cost == 6

    def test_capacity_override_and_infeasible(self):
        arcs = [Arc(1, 1, 2, 1, 1), Arc(2, 1, 2, 1, 5)]
        res = greedy_sp_mcf(arcs, 1, 2, 1, capacity={1: 0, 2: 1})
        assert res.flow == {1: 0, 2: 1}
        assert not greedy_sp_mcf(arcs, 1, 2, 3).optimal

    def test_matches_mcf_on_random_sp(self):
        rng = random.Random(40)
        for _ in range(200):
            net, tree = random_sp_instance(rng.randint(1, 8), 3, 6, 1, rng=rng)
            d = rng.randint(0, 6)
            a = greedy_sp_mcf(net.arcs, tree.origin, tree.target, d)
            b = solve_mcf_demand(net.num_vertices, net.arcs, tree.origin, tree.target, d)
            assert (a.optimal, a.cost) == (b.optimal, b.cost)

    def test_rejects_non_sp_and_wrong_terminals(self):
        bridge = [Arc(i, u, v, 1, 1) for i, (u, v) in
                  enumerate([(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)], start=1)]
        with pytest.raises(NotSeriesParallel):
            greedy_sp_mcf(bridge, 1, 4, 1)
        with pytest.raises(PreconditionError):
            greedy_sp_mcf([Arc(1, 1, 2, 1, 1), Arc(2, 2, 3, 1, 1)], 1, 2, 1)


class TestSolveUniqueSp:
    def test_equal_demands(self):
        arcs = [Arc(1, 1, 2, 2, 1, FIX), Arc(2, 1, 2, 2, 3), Arc(3, 2, 3, 3, 2)]
        net = Network(3, arcs, [{1: 3, 3: -3}, {1: 3, 3: -3}])
        res = solve_unique_sp(net)
        assert res.flow[0] == res.flow[1]
        greedy = greedy_sp_mcf(arcs, 1, 3, 3)
        assert res.robust_cost == greedy.cost

    def test_zero_low_demand(self):
        arcs = [Arc(1, 1, 2, 2, 1, FIX), Arc(2, 1, 2, 2, 3), Arc(3, 2, 3, 3, 2)]
        net = Network(3, arcs, [{}, {1: 2, 3: -2}])
        res = solve_unique_sp(net)
        assert all(x == 0 for x in res.flow[0].values())
        free = solve_mcf_demand(3, net.free_arcs, 1, 3, 2)
        assert res.flow[1] == {**free.flow, 1: 0}

    def test_high_scenario_first(self):
        arcs = [Arc(1, 1, 2, 2, 1, FIX), Arc(2, 1, 2, 2, 3)]
        net = Network(2, arcs, [{1: 3, 2: -3}, {1: 1, 2: -1}])
        res = solve_unique_sp(net)
        assert validate_robust_flow(net, res.flow) == []
        assert res.cost.argmax == 0

    def test_single_scenario(self):
        net = Network(2, [Arc(1, 1, 2, 2, 4)], [{1: 2, 2: -2}])
        assert solve_unique_sp(net).robust_cost == 8

    def test_infeasible_steps(self):
        only_fixed = Network(2, [Arc(1, 1, 2, 3, 1, FIX)], [{1: 1, 2: -1}, {1: 2, 2: -2}])
        assert solve_unique_sp(only_fixed).info["step"] == 1
        tight = Network(2, [Arc(1, 1, 2, 2, 1, FIX), Arc(2, 1, 2, 1, 1)],
                        [{1: 4, 2: -4}, {1: 4, 2: -4}])
        assert solve_unique_sp(tight).info["step"] == 2

    def test_preconditions(self):
        arcs = [Arc(1, 1, 2, 2, 1), Arc(2, 2, 3, 2, 1)]
        with pytest.raises(PreconditionError):
            solve_unique_sp(Network(3, arcs, [{1: 1, 2: -1}, {1: 1, 3: -1}]))
        with pytest.raises(PreconditionError):
            solve_unique_sp(Network(3, arcs, [{1: 1, 2: -1}] * 2))
        with pytest.raises(PreconditionError):
            solve_unique_sp(Network(3, arcs, [{1: 1, 3: -1}] * 3))
        with pytest.raises(ValueError):
            TwoScenarioDemand(3, 2)

    def test_matches_dp_and_enumeration(self):
        feasible = 0
        for net, tree in unique_instances(41, 200):
            a = solve_unique_sp(net)
            b = dp_solve(net, tree)
            c = solve_enumeration(net)
            assert (a.optimal, a.robust_cost) == (b.optimal, b.robust_cost)
            assert (a.optimal, a.robust_cost) == (c.optimal, c.robust_cost)
            if a.optimal:
                feasible += 1
                assert validate_robust_flow(net, a.flow) == []
        assert feasible >= 60


class TestStructure:
    """Properties of the returned flows themselves."""

    def outputs(self, seed=42, count=200):
        for net, tree in unique_instances(seed, count):
            res = solve_unique_sp(net)
            if res.optimal:
                yield net, tree, res

    def test_dominance_and_last_scenario_cost(self):
        for net, tree, res in self.outputs():
            f1, f2 = res.flow[0], res.flow[1]
            assert all(f2[a] >= f1[a] for a in f2)
            report = robust_cost(net, res.flow)
            assert report.robust_cost == report.scenario_costs[1]

    def test_shortest_free_path_load(self):
        checked = 0
        for net, tree, res in self.outputs():
            path = cheapest_path(net.free_arcs, tree.origin, tree.target)
            if path is None:
                continue
            bottleneck = min(net.arc_by_id[a].capacity for a in path)
            excess = res.info["high"] - res.info["low"]
            assert all(res.flow[1][a] >= min(bottleneck, excess) for a in path)
            checked += 1
        assert checked >= 30

    def test_parallel_inflows_dominate(self):
        for net, tree, res in self.outputs():
            for node in tree.nodes:
                if node.kind != "P":
                    continue
                for child in (node.left, node.right):
                    c = tree.nodes[child]
                    arcs = tree.leaves(child)
                    into = [sum(res.flow[k][a] for a in arcs
                                if net.arc_by_id[a].tail == c.origin) for k in range(2)]
                    assert into[1] >= into[0]

    def test_series_restrictions_are_optimal(self):
        checked = 0
        for net, tree, res in self.outputs(seed=43, count=300):
            root = tree.nodes[tree.root]
            if root.kind != "S":
                continue
            mid = tree.nodes[root.left].target
            d = [res.info["low"], res.info["high"]]
            for child, bal in ((root.left, lambda x: {tree.origin: x, mid: -x, tree.target: 0}),
                               (root.right, lambda x: {tree.origin: 0, mid: x, tree.target: -x})):
                sub = restrict_to_subgraph(net, tree.leaves(child), [bal(x) for x in d])
                part = type(res.flow)([{a.id: f[a.id] for a in sub.arcs} for f in res.flow])
                assert validate_robust_flow(sub, part) == []
                assert robust_cost(sub, part).robust_cost == solve_enumeration(sub).robust_cost
                checked += 1
        assert checked >= 20
