"""Directed edge-disjoint paths with congestion, reduced to E|N and VE|-."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, Tuple

from ..model import (
    EN,
    VE,
    Edge,
    InstanceError,
    NodeId,
    RequestGraph,
    SubstrateGraph,
    VnepInstance,
)


@dataclass(frozen=True)
class DirEdpwcInstance:
    nodes: Tuple[NodeId, ...]
    edges: Tuple[Edge, ...]
    commodities: Tuple[Tuple[NodeId, NodeId], ...]
    congestion: int

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "commodities", tuple(tuple(c) for c in self.commodities))
        # reuse the simple-digraph checks
        SubstrateGraph(self.nodes, self.edges)
        known = set(self.nodes)
        for s, t in self.commodities:
            if s not in known or t not in known:
                raise InstanceError(f"commodity {(s, t)} references unknown nodes")
        if not isinstance(self.congestion, int) or self.congestion < 1:
            raise InstanceError("congestion must be a positive integer")


def _request_nodes(d: DirEdpwcInstance):
    """Virtual endpoints i_k, j_k and the substrate node each one is pinned to."""
    pinned: Dict[NodeId, NodeId] = {}
    edges = []
    for k, (s, t) in enumerate(d.commodities, 1):
        pinned[f"i{k}"] = s
        pinned[f"j{k}"] = t
        edges.append((f"i{k}", f"j{k}"))
    return pinned, edges


def reduce_diredpwc_en(d: DirEdpwcInstance) -> VnepInstance:
    """Same graph as substrate with edge capacity c; endpoints pinned by placement."""
    pinned, req_edges = _request_nodes(d)
    substrate = SubstrateGraph(d.nodes, d.edges, edge_capacity={e: d.congestion for e in d.edges})
    all_nodes = frozenset(d.nodes)
    request = RequestGraph(
        tuple(pinned), tuple(req_edges),
        edge_demand={e: 1 for e in req_edges},
        forbidden_nodes={i: all_nodes - {u} for i, u in pinned.items()},
    )
    return VnepInstance.normalized(substrate, request, EN)


def copy_id(v: NodeId, h: int) -> NodeId:
    return f"{v}#copy{h}"


def node_labels(d: DirEdpwcInstance) -> Dict[NodeId, int]:
    """Unique positive label per node: 1-based rank in sorted id order."""
    return {v: k for k, v in enumerate(sorted(d.nodes), 1)}


def reduce_diredpwc_ve(d: DirEdpwcInstance) -> VnepInstance:
    """Pin endpoints through capacities instead of placement restrictions.

    Every node v gets one leaf copy per occurrence of v as a source or sink,
    attached in both directions with capacity-1 edges. Originals have node
    capacity 0 and every copy of v has capacity label(v); an endpoint pinned
    to v demands label(v). Since labels are unique and total capacity equals
    total demand, each endpoint must land on a copy of its own node.
    """
    pinned, req_edges = _request_nodes(d)
    label = node_labels(d)
    occurrences = Counter(pinned.values())
    nodes = list(d.nodes)
    edges = list(d.edges)
    node_cap = {v: 0 for v in d.nodes}
    edge_cap = {e: d.congestion for e in d.edges}
    for v in d.nodes:
        for h in range(1, occurrences[v] + 1):
            c = copy_id(v, h)
            if c in node_cap:
                raise InstanceError(f"copy id {c!r} collides with an existing node")
            nodes.append(c)
            node_cap[c] = label[v]
            for e in ((c, v), (v, c)):
                edges.append(e)
                edge_cap[e] = 1
    substrate = SubstrateGraph(tuple(nodes), tuple(edges), node_cap, edge_cap)
    request = RequestGraph(
        tuple(pinned), tuple(req_edges),
        node_demand={i: label[u] for i, u in pinned.items()},
        edge_demand={e: 1 for e in req_edges},
    )
    return VnepInstance.normalized(substrate, request, VE)
