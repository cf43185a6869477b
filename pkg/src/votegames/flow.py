"""Integer feasible flow with per-arc lower bounds and capacities.

Lower bounds are eliminated by the classical transformation: a
super-source supplies every node's net mandatory inflow, a super-sink
absorbs net mandatory outflow, and an unbounded return arc from sink to
source turns the s-t problem into a circulation.  The residual max-flow
problem is handed to scipy's integral max-flow solver, so returned
assignments are always integer valued and deterministic for a fixed
arc order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

__all__ = ["FlowNetwork", "FlowAssignment", "feasible_flow"]


@dataclass(frozen=True)
class FlowNetwork:
    """Directed network; each arc is (tail, head, lower, upper)."""

    node_count: int
    source: int
    sink: int
    arcs: tuple  # tuple[tuple[int, int, int, int], ...]

    def __post_init__(self):
        if not (0 <= self.source < self.node_count and 0 <= self.sink < self.node_count):
            raise ValueError("source/sink out of range")
        if self.source == self.sink:
            raise ValueError("source and sink must be distinct")
        for tail, head, _, _ in self.arcs:
            if not (0 <= tail < self.node_count and 0 <= head < self.node_count):
                raise ValueError("arc endpoint out of range")


@dataclass(frozen=True)
class FlowAssignment:
    """One integer flow value per arc, in the network's arc order."""

    flow: tuple  # tuple[int, ...]


def feasible_flow(net: FlowNetwork) -> Optional[FlowAssignment]:
    """An integral flow meeting all bounds and conservation, or None.

    Infeasibility (including arcs whose upper bound is negative or
    below the lower bound) is reported as None, never as an error.
    """
    lowers = []
    for _, _, lower, upper in net.arcs:
        if upper < lower or upper < 0:
            return None
        lowers.append(max(lower, 0))

    n = net.node_count
    super_source, super_sink = n, n + 1

    # Residual capacities per distinct (tail, head) pair; parallel arcs
    # are coalesced and their flow split back greedily afterwards.
    residual = {}
    excess = [0] * n
    for (tail, head, _, upper), lower in zip(net.arcs, lowers):
        residual[tail, head] = residual.get((tail, head), 0) + (upper - lower)
        excess[head] += lower
        excess[tail] -= lower

    big = sum(upper for _, _, _, upper in net.arcs) + sum(map(abs, excess)) + 1
    residual[net.sink, net.source] = residual.get((net.sink, net.source), 0) + big

    demand = 0
    for v, e in enumerate(excess):
        if e > 0:
            residual[super_source, v] = e
            demand += e
        elif e < 0:
            residual[v, super_sink] = -e

    if demand == 0:
        transported = {}
    else:
        pairs = [(t, h) for (t, h), cap in residual.items() if cap > 0]
        caps = [residual[p] for p in pairs]
        rows = np.array([p[0] for p in pairs], dtype=np.int32)
        cols = np.array([p[1] for p in pairs], dtype=np.int32)
        graph = csr_matrix((np.array(caps, dtype=np.int64), (rows, cols)),
                           shape=(n + 2, n + 2))
        result = maximum_flow(graph, super_source, super_sink)
        if result.flow_value < demand:
            return None
        fm = result.flow
        transported = {}
        for tail, head in pairs:
            value = int(fm[tail, head])
            if value > 0:
                transported[tail, head] = value

    # Split each pair's transported flow back over its parallel arcs.
    flows = []
    for (tail, head, _, upper), lower in zip(net.arcs, lowers):
        available = transported.get((tail, head), 0)
        take = min(available, upper - lower)
        transported[tail, head] = available - take
        flows.append(lower + take)
    return FlowAssignment(tuple(flows))
