import random

import pytest

from conftest import brute_flow_feasible
from votegames.flow import FlowAssignment, FlowNetwork, feasible_flow


def _check_valid(net: FlowNetwork, assignment: FlowAssignment):
    balance = [0] * net.node_count
    for (tail, head, lower, upper), f in zip(net.arcs, assignment.flow):
        assert max(lower, 0) <= f <= upper
        balance[tail] -= f
        balance[head] += f
    for v in range(net.node_count):
        if v not in (net.source, net.sink):
            assert balance[v] == 0


def test_single_mandatory_arc():
    net = FlowNetwork(2, 0, 1, ((0, 1, 1, 1),))
    result = feasible_flow(net)
    assert result == FlowAssignment((1,))


def test_negative_capacity_is_infeasible():
    net = FlowNetwork(2, 0, 1, ((0, 1, -1, -1),))
    assert feasible_flow(net) is None
    net = FlowNetwork(3, 0, 2, ((0, 1, 0, 1), (1, 2, 2, 1)))
    assert feasible_flow(net) is None


def test_three_voter_assignment():
    # source -> 3 unit-supply voters -> their candidates -> sink
    # candidates at nodes 4,5; voters 1,2 force candidate 4, voter 3 forces 5
    arcs = [
        (0, 1, 1, 1), (0, 2, 1, 1), (0, 3, 1, 1),
        (1, 4, 0, 1), (2, 4, 0, 1), (3, 5, 0, 1),
        (4, 6, 2, 2), (5, 6, 1, 1),
    ]
    net = FlowNetwork(7, 0, 6, tuple(arcs))
    result = feasible_flow(net)
    assert result is not None
    _check_valid(net, result)
    assert result.flow == (1, 1, 1, 1, 1, 1, 2, 1)


def test_unsatisfiable_demand():
    arcs = [(0, 1, 1, 1), (1, 2, 0, 1), (2, 3, 2, 2)]
    net = FlowNetwork(4, 0, 3, tuple(arcs))
    assert feasible_flow(net) is None


def test_zero_demand_network():
    net = FlowNetwork(3, 0, 2, ((0, 1, 0, 2), (1, 2, 0, 2)))
    result = feasible_flow(net)
    assert result is not None
    _check_valid(net, result)


def test_lower_bound_cycle():
    # mandatory circulation through a cycle off the source/sink path
    arcs = [(0, 1, 0, 3), (1, 2, 1, 2), (2, 1, 1, 2), (1, 3, 0, 3)]
    net = FlowNetwork(4, 0, 3, tuple(arcs))
    result = feasible_flow(net)
    assert result is not None
    _check_valid(net, result)


def test_parallel_arcs_split():
    arcs = [(0, 1, 0, 1), (0, 1, 1, 2), (1, 2, 3, 3)]
    net = FlowNetwork(3, 0, 2, tuple(arcs))
    result = feasible_flow(net)
    assert result is not None
    _check_valid(net, result)
    assert sum(result.flow[:2]) == 3


def test_validation():
    with pytest.raises(ValueError):
        FlowNetwork(2, 0, 0, ())
    with pytest.raises(ValueError):
        FlowNetwork(2, 0, 2, ())
    with pytest.raises(ValueError):
        FlowNetwork(2, 0, 1, ((0, 5, 0, 1),))


def test_determinism():
    rng = random.Random(7)
    arcs = tuple(
        (rng.randrange(5), rng.randrange(5), rng.randint(0, 1), rng.randint(1, 3))
        for _ in range(10)
    )
    net = FlowNetwork(5, 0, 4, arcs)
    first = feasible_flow(net)
    for _ in range(5):
        assert feasible_flow(net) == first


def test_agrees_with_brute_force_on_random_networks():
    rng = random.Random(20260810)
    checked_feasible = 0
    for trial in range(400):
        nodes = rng.randint(2, 5)
        source, sink = 0, nodes - 1
        n_arcs = rng.randint(1, 9 if trial % 4 else 12)
        arcs = []
        for _ in range(n_arcs):
            tail = rng.randrange(nodes)
            head = rng.randrange(nodes)
            if tail == head:
                head = (head + 1) % nodes
            upper = rng.randint(0, 3)
            lower = rng.randint(0, 3) if rng.random() < 0.5 else 0
            arcs.append((tail, head, lower, upper))
        net = FlowNetwork(nodes, source, sink, tuple(arcs))
        result = feasible_flow(net)
        assert (result is not None) == brute_flow_feasible(net)
        if result is not None:
            _check_valid(net, result)
            checked_feasible += 1
    assert checked_feasible > 50
