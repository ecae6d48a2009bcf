"""Exact decision procedure for every variant (complete backtracking search).

Request nodes are assigned in fail-first order (fewest allowed hosts, ties
by node id). A request edge is routed as soon as both endpoints have a host;
its candidate paths are the simple paths over allowed edges that fit the
residual edge capacity and the remaining latency budget, produced in
lexicographic edge order. Backtracking covers both levels, so the search is
complete: INFEASIBLE is only reported after every option was exhausted.
"""

from __future__ import annotations

import enum
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple

from .model import Edge, InstanceError, Mapping, NodeId, Path, VnepInstance
from .rational import INF, scale
from .validation import (
    Report,
    allowed_edges,
    allowed_nodes,
    is_approx_feasible,
    optional_factors,
)

log = logging.getLogger(__name__)

DEFAULT_MAX_SEARCH_NODES = 10**7


class Status(str, enum.Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    RESOURCE_LIMIT = "resource_limit"


@dataclass(frozen=True)
class SolveLimits:
    max_search_nodes: float = DEFAULT_MAX_SEARCH_NODES
    max_time: float = INF  # seconds

    def __post_init__(self):
        if self.max_search_nodes < 0 or self.max_time < 0:
            raise ValueError("limits must be nonnegative")


@dataclass
class SolveStats:
    nodes_explored: int = 0
    paths_enumerated: int = 0
    wall_time: float = 0.0

    def as_dict(self) -> dict:
        return {"nodes_explored": self.nodes_explored,
                "paths_enumerated": self.paths_enumerated,
                "wall_time": round(self.wall_time, 6)}


@dataclass(frozen=True)
class SolveResult:
    status: Status
    mapping: Optional[Mapping] = None
    stats: SolveStats = field(default_factory=SolveStats)

    @property
    def feasible(self) -> bool:
        return self.status is Status.FEASIBLE


class _LimitReached(Exception):
    pass


class _Search:
    def __init__(self, instance: VnepInstance, factors, limits: SolveLimits):
        s, r, var = instance.substrate, instance.request, instance.variant
        alpha, beta, gamma = factors
        self.limits = limits
        self.stats = SolveStats()
        self.deadline = time.monotonic() + limits.max_time

        self.candidates: Dict[NodeId, List[NodeId]] = {
            i: sorted(allowed_nodes(instance, i)) for i in r.nodes}
        self.order = sorted(r.nodes, key=lambda i: (len(self.candidates[i]), i))
        position = {i: k for k, i in enumerate(self.order)}
        self.edges_at: List[List[Edge]] = [[] for _ in self.order]
        for ij in sorted(r.edges):
            self.edges_at[max(position[ij[0]], position[ij[1]])].append(ij)

        self.adjacency: Dict[Edge, Dict[NodeId, List[Edge]]] = {}
        for ij in r.edges:
            allowed = allowed_edges(instance, ij)
            self.adjacency[ij] = {u: [e for e in s.out_edges[u] if e in allowed] for u in s.nodes}

        self.node_demand = r.node_demand
        self.edge_demand = r.edge_demand
        self.latency = s.edge_latency
        self.node_residual = {u: scale(alpha, c) if var.node_capacities else INF
                              for u, c in s.node_capacity.items()}
        self.edge_residual = {e: scale(beta, c) if var.edge_capacities else INF
                              for e, c in s.edge_capacity.items()}
        self.budget = {ij: scale(gamma, b) if var.latency else INF
                       for ij, b in r.edge_latency_bound.items()}
        self.host: Dict[NodeId, NodeId] = {}
        self.paths: Dict[Edge, Path] = {}

    def _tick(self) -> None:
        st = self.stats
        total = st.nodes_explored + st.paths_enumerated
        if total > self.limits.max_search_nodes:
            raise _LimitReached
        if total & 0x3FF == 0 and time.monotonic() > self.deadline:
            raise _LimitReached

    def assign(self, k: int) -> bool:
        if k == len(self.order):
            return True
        i = self.order[k]
        demand = self.node_demand[i]
        residual = self.node_residual
        for u in self.candidates[i]:
            self.stats.nodes_explored += 1
            self._tick()
            if residual[u] < demand:
                continue
            residual[u] -= demand
            self.host[i] = u
            if self.route(k, 0):
                return True
            residual[u] += demand
            del self.host[i]
        return False

    def route(self, k: int, idx: int) -> bool:
        pending = self.edges_at[k]
        if idx == len(pending):
            return self.assign(k + 1)
        ij = pending[idx]
        demand = self.edge_demand[ij]
        residual = self.edge_residual
        for path in self._simple_paths(ij):
            self.stats.paths_enumerated += 1
            self._tick()
            for e in path:
                residual[e] -= demand
            self.paths[ij] = path
            if self.route(k, idx + 1):
                return True
            del self.paths[ij]
            for e in path:
                residual[e] += demand
        return False

    def _simple_paths(self, ij: Edge) -> Iterator[Path]:
        src, dst = self.host[ij[0]], self.host[ij[1]]
        if src == dst:
            yield ()
            return
        adjacency = self.adjacency[ij]
        demand = self.edge_demand[ij]
        budget = self.budget[ij]
        residual, latency = self.edge_residual, self.latency
        path: List[Edge] = []
        on_path = {src}

        def extend(u: NodeId, spent) -> Iterator[Path]:
            for e in adjacency[u]:
                v = e[1]
                if v in on_path or residual[e] < demand:
                    continue
                cost = spent + latency[e]
                if cost > budget:
                    continue
                path.append(e)
                if v == dst:
                    yield tuple(path)
                else:
                    on_path.add(v)
                    yield from extend(v, cost)
                    on_path.discard(v)
                path.pop()

        yield from extend(src, Fraction(0))


def solve_decision(instance: VnepInstance, factors: Optional[Tuple] = None,
                   limits: Optional[SolveLimits] = None) -> SolveResult:
    """Decide whether a feasible (or approximately feasible) embedding exists.

    ``factors`` is an optional ``(alpha, beta, gamma)`` triple; when given, the
    cumulative node, edge and latency limits are scaled by these factors
    while the suitability filters keep the original capacities.
    """
    if not isinstance(instance, VnepInstance):
        raise InstanceError(f"expected a VnepInstance, got {type(instance).__name__}")
    checked = optional_factors(factors)
    limits = limits or SolveLimits()
    started = time.monotonic()
    search = _Search(instance, checked, limits)
    try:
        found = search.assign(0)
    except _LimitReached:
        search.stats.wall_time = time.monotonic() - started
        log.info("search limit reached after %s", search.stats.as_dict())
        return SolveResult(Status.RESOURCE_LIMIT, None, search.stats)
    search.stats.wall_time = time.monotonic() - started
    if not found:
        return SolveResult(Status.INFEASIBLE, None, search.stats)
    mapping = Mapping(dict(search.host), dict(search.paths))
    report = is_approx_feasible(instance, mapping, *checked)
    if not report:
        raise AssertionError(f"solver produced an infeasible mapping: {report.as_dict()}")
    return SolveResult(Status.FEASIBLE, mapping, search.stats)


def verify_certificate(instance: VnepInstance, m: Mapping,
                       factors: Optional[Tuple] = None) -> Report:
    """Check a claimed embedding; the returned report is truthy iff it holds."""
    return is_approx_feasible(instance, m, *optional_factors(factors))
