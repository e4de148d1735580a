import random

import pytest

from robflow.errors import NotSeriesParallel
from robflow.network import Arc, Network
from robflow.reductions import (PartitionInstance, gen_partition_instance, gen_sat_instance,
                                random_sat3b2)
from robflow.spdec import SpNode, SpTree, decompose, evaluate, random_sp_instance, random_sp_tree


def arcs_of(pairs):
    return [Arc(i, u, v, 1, 0) for i, (u, v) in enumerate(pairs, start=1)]


class TestDecompose:
    def test_single_arc(self):
        tree = decompose(arcs_of([(1, 2)]))
        assert tree.to_text() == "L(1)"
        assert (tree.origin, tree.target) == (1, 2)

    def test_series_and_parallel(self):
        tree = decompose(arcs_of([(1, 2), (2, 3), (1, 3)]))
        assert tree.to_text() == "P(S(L(1),L(2)),L(3))"
        assert len(tree) == 5

    def test_parallel_bundle_before_series(self):
        tree = decompose(arcs_of([(1, 2), (1, 2), (2, 3)]))
        assert tree.to_text() == "S(P(L(1),L(2)),L(3))"

    def test_partition_instance(self):
        net, _ = gen_partition_instance(PartitionInstance([1, 1, 2]))
        tree = decompose(net)
        assert len(tree) == 2 * len(net.arcs) - 1
        assert evaluate(tree) == {a.id: (a.tail, a.head) for a in net.arcs}

    def test_bridge_is_not_sp(self):
        # the Wheatstone bridge is the smallest acyclic two-terminal non-SP digraph
        with pytest.raises(NotSeriesParallel) as err:
            decompose(arcs_of([(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]))
        assert len(err.value.witness) == 5

    def test_several_sources(self):
        with pytest.raises(NotSeriesParallel, match="sources"):
            decompose(arcs_of([(1, 3), (2, 3)]))

    def test_cycle_is_not_sp(self):
        with pytest.raises(NotSeriesParallel):
            decompose(arcs_of([(1, 2), (2, 3), (3, 2), (3, 4)]))

    def test_empty(self):
        with pytest.raises(ValueError):
            decompose([])

    def test_sat_instances_are_not_sp(self):
        rng = random.Random(0)
        for n in (3, 6):
            f = random_sat3b2(n, rng)
            for variant in ("multi_sink", "unique_sink"):
                with pytest.raises(NotSeriesParallel):
                    decompose(gen_sat_instance(f, variant))

    def test_deterministic(self):
        rng = random.Random(9)
        for _ in range(50):
            net, _ = random_sp_instance(rng.randint(1, 12), 2, 2, 1, rng=rng)
            assert decompose(net) == decompose(list(reversed(net.arcs)))


class TestTreeLaws:
    def test_node_count_and_round_trip(self):
        rng = random.Random(1)
        for _ in range(300):
            tree = random_sp_tree(rng.randint(1, 15), rng)
            ends = evaluate(tree)
            assert len(tree) == 2 * len(ends) - 1
            arcs = [Arc(i, u, v, 1, 0) for i, (u, v) in ends.items()]
            again = decompose(arcs)
            assert len(again) == 2 * len(arcs) - 1
            assert evaluate(again) == ends

    def test_children_precede_parents(self):
        rng = random.Random(2)
        tree = decompose(random_sp_instance(12, 1, 1, 1, rng=rng)[0])
        for i, node in enumerate(tree.nodes):
            if node.kind != "L":
                assert node.left < i and node.right < i
        assert sorted(tree.postorder()) == list(range(len(tree)))
        assert sorted(tree.leaves()) == list(range(1, 13))

    def test_evaluate_rejects_inconsistent_labels(self):
        nodes = (SpNode("L", 1, 2, arc=1), SpNode("L", 3, 4, arc=2),
                 SpNode("S", 1, 4, left=0, right=1))
        with pytest.raises(ValueError):
            evaluate(SpTree(nodes, 2))


class TestRandomInstances:
    def test_unique_mode_balances(self):
        rng = random.Random(5)
        for _ in range(50):
            net, tree = random_sp_instance(6, 3, 5, 3, rng=rng)
            supplies = [net.balance(k, tree.origin) for k in range(3)]
            assert supplies == sorted(supplies)
            for k, bal in enumerate(net.balances):
                assert set(bal) <= {tree.origin, tree.target}

    def test_seeded(self):
        a = random_sp_instance(8, 3, 5, 2, seed=4, mode="multi")
        b = random_sp_instance(8, 3, 5, 2, seed=4, mode="multi")
        assert a[0] == b[0] and a[1] == b[1]

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            random_sp_instance(3, 1, 1, 1, mode="other")
        with pytest.raises(ValueError):
            random_sp_tree(0, random.Random(0))


def test_network_roundtrip_through_tree():
    net = Network(4, arcs_of([(1, 2), (2, 4), (1, 3), (3, 4), (1, 4)]), [{}])
    tree = decompose(net)
    # lowest label first: S(1,2) gets label 1 and merges with arc 5 before S(3,4) exists
    assert tree.to_text() == "P(P(S(L(1),L(2)),L(5)),S(L(3),L(4)))"
