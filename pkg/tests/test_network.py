import random

import pytest

from oracles import random_network
from robflow.errors import FlowStructureError, NetworkError
from robflow.network import (Arc, ArcKind, Network, RobustFlow, restrict_to_subgraph,
                             robust_cost, validate_robust_flow, zero_flow)
from robflow.reductions import PartitionInstance, gen_partition_instance

FIX, FREE = ArcKind.FIXED, ArcKind.FREE


def two_path_net():
    """s=1 -> t=3 via vertex 2 (arcs 1, 2) or directly (arc 3, fixed)."""
    arcs = [Arc(1, 1, 2, 2, 1), Arc(2, 2, 3, 2, 1), Arc(3, 1, 3, 1, 1, FIX)]
    return Network(3, arcs, [{1: 1, 3: -1}, {1: 2, 3: -2}])


class TestNetworkChecks:
    def test_rejects_unbalanced_scenario(self):
        with pytest.raises(NetworkError, match="scenario 2"):
            Network(2, [Arc(1, 1, 2, 1, 0)], [{1: 1, 2: -1}, {1: 1}])

    @pytest.mark.parametrize("arc", [
        Arc(1, 1, 1, 1, 0),       # self-loop
        Arc(1, 1, 3, 1, 0),       # unknown head
        Arc(1, 1, 2, -1, 0),      # negative capacity
        Arc(1, 1, 2, 1, -2),      # negative cost
    ])
    def test_rejects_bad_arcs(self, arc):
        with pytest.raises(NetworkError):
            Network(2, [arc], [{}])

    def test_rejects_duplicate_ids_and_no_scenarios(self):
        with pytest.raises(NetworkError, match="duplicate"):
            Network(2, [Arc(1, 1, 2, 1, 0), Arc(1, 2, 1, 1, 0)], [{}])
        with pytest.raises(NetworkError, match="scenario"):
            Network(2, [Arc(1, 1, 2, 1, 0)], [])

    def test_rejects_cost_overflow(self):
        with pytest.raises(NetworkError, match="2\\^62"):
            Network(2, [Arc(1, 1, 2, 2**31, 2**32)], [{}])

    def test_parallel_arcs_are_distinct(self):
        net = Network(2, [Arc(1, 1, 2, 1, 0), Arc(2, 1, 2, 1, 5)], [{}])
        assert set(net.arc_by_id) == {1, 2}

    def test_balances_are_sparse(self):
        net = Network(3, [], [{1: 0, 2: 3, 3: -3}])
        assert net.balances[0] == {2: 3, 3: -3}
        assert net.balance(0, 1) == 0


class TestValidate:
    def test_zero_flow_on_zero_balances_is_ok(self):
        net = Network(3, two_path_net().arcs, [{}, {}])
        assert validate_robust_flow(net, zero_flow(net)) == []

    def test_inconsistent_fixed_arc(self):
        net = two_path_net()
        flow = RobustFlow([{1: 1, 2: 1, 3: 0}, {1: 1, 2: 1, 3: 1}])
        found = validate_robust_flow(net, flow)
        assert [(v.family, v.arc) for v in found] == [("consistency", 3)]
        assert "arc 3" in str(found[0])

    def test_reports_every_violation(self):
        net = two_path_net()
        flow = RobustFlow([{1: 3, 2: 0, 3: 0}, {1: 0, 2: 0, 3: 1}])
        families = sorted(v.family for v in validate_robust_flow(net, flow))
        # capacity on arc 1; conservation at 1, 2, 3 (scenario 1) and 1, 3 (scenario 2);
        # consistency on arc 3
        assert families.count("capacity") == 1
        assert families.count("conservation") == 5
        assert families.count("consistency") == 1

    def test_structure_mismatch_raises(self):
        net = two_path_net()
        with pytest.raises(FlowStructureError):
            validate_robust_flow(net, RobustFlow([{1: 0, 2: 0, 3: 0}]))
        with pytest.raises(FlowStructureError, match="no flow value"):
            validate_robust_flow(net, RobustFlow([{1: 0, 2: 0}, {1: 0, 2: 0, 3: 0}]))
        with pytest.raises(FlowStructureError, match="unknown"):
            validate_robust_flow(net, RobustFlow([{1: 0, 2: 0, 3: 0, 9: 0}] * 2))

    def test_partition_forward_flow_is_valid(self):
        # {1,1,2}: fixed arcs of the first half {1,1} carry one unit in both scenarios
        net, beta = gen_partition_instance(PartitionInstance([1, 1, 2]))
        f1 = {a.id: 0 for a in net.arcs}
        f1.update({2: 1, 3: 1, 5: 1, 6: 1, 7: 1, 9: 1})
        f2 = {a.id: 0 for a in net.arcs}
        f2.update({2: 1, 5: 1, 9: 1, 10: 1})
        flow = RobustFlow([f1, f2])
        assert validate_robust_flow(net, flow) == []
        assert robust_cost(net, flow).scenario_costs == (6, 6) == (beta, beta)

    def test_scenario_decomposable(self):
        rng = random.Random(3)
        for _ in range(50):
            net = random_network(rng, 4, 5, 2, 3, 2)
            flows = [{a.id: rng.randint(0, a.capacity) for a in net.arcs} for _ in range(2)]
            flow = RobustFlow(flows)
            whole = validate_robust_flow(net, flow) == []
            singles = all(
                validate_robust_flow(Network(net.num_vertices, [Arc(a.id, a.tail, a.head,
                                     a.capacity, a.cost) for a in net.arcs],
                                     [net.balances[k]]), RobustFlow([flows[k]])) == []
                for k in range(2))
            loads = all(flows[0][a.id] == flows[1][a.id] for a in net.fixed_arcs)
            assert whole == (singles and loads)


class TestRobustCost:
    def test_max_and_argmax(self):
        net = Network(2, [Arc(1, 1, 2, 9, 1), Arc(2, 1, 2, 9, 2)], [{1: 4, 2: -4}, {1: 1, 2: -1}])
        report = robust_cost(net, RobustFlow([{1: 4, 2: 0}, {1: 0, 2: 1}]))
        assert report.scenario_costs == (4, 2)
        assert (report.robust_cost, report.argmax) == (4, 0)

    def test_ties_pick_lowest_scenario(self):
        net = Network(2, [Arc(1, 1, 2, 9, 1)], [{}, {}, {}])
        report = robust_cost(net, RobustFlow([{1: 1}, {1: 3}, {1: 3}]))
        assert report.argmax == 1

    def test_zero_flow_costs_nothing(self):
        net = two_path_net()
        assert robust_cost(net, zero_flow(net)).scenario_costs == (0, 0)

    def test_matches_direct_sum_and_bound(self):
        rng = random.Random(11)
        for _ in range(40):
            net = random_network(rng, 4, 5, 3, 9, 2)
            flows = [{a.id: rng.randint(0, a.capacity) for a in net.arcs} for _ in range(2)]
            report = robust_cost(net, RobustFlow(flows))
            direct = [0, 0]
            for k in range(2):
                for a in net.arcs:
                    direct[k] += a.cost * flows[k][a.id]
            assert list(report.scenario_costs) == direct
            assert 0 <= report.robust_cost <= net.total_cost_bound


class TestRestrict:
    def test_identity(self):
        net = two_path_net()
        sub = restrict_to_subgraph(net, [a.id for a in net.arcs])
        assert sub == net
        assert all(x == y for x, y in zip(sub.arcs, net.arcs))

    def test_drop_fixed_arcs_of_partition_instance(self):
        net, _ = gen_partition_instance(PartitionInstance([1, 1, 2]))
        sub = restrict_to_subgraph(net, [a.id for a in net.free_arcs])
        assert len(sub.fixed_arcs) == 0
        assert len(sub.arcs) == 7

    def test_empty_arc_set(self):
        net = Network(3, two_path_net().arcs, [{}])
        sub = restrict_to_subgraph(net, [])
        assert sub.arcs == () and sub.num_vertices == 3

    def test_override(self):
        net = two_path_net()
        sub = restrict_to_subgraph(net, [1], [{2: -1, 3: 0}, {2: -2, 3: 0}])
        assert sub.balances == ({1: 1, 2: -1}, {1: 2, 2: -2})
        with pytest.raises(NetworkError, match="scenario 1"):
            restrict_to_subgraph(net, [1], [{2: -2}, {}])
        with pytest.raises(NetworkError, match="unknown arc"):
            restrict_to_subgraph(net, [7])
