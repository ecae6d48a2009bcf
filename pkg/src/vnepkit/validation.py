"""Validity, allocation and (approximate) feasibility checks for mappings."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any, List, Optional, Set, Tuple

from .model import (
    Allocations,
    Edge,
    InvalidMappingError,
    Mapping,
    NodeId,
    UnknownElementError,
    VariantSpec,
    VnepInstance,
)
from .rational import INF, is_inf, scale, to_rational


@dataclass(frozen=True)
class Violation:
    kind: str
    element: Any
    detail: str

    def as_dict(self) -> dict:
        return {"kind": self.kind, "element": _jsonable(self.element), "detail": self.detail}


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    return x


@dataclass(frozen=True)
class Report:
    """Outcome of a check. Truthy iff no violation was found."""

    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def kinds(self) -> Set[str]:
        return {v.kind for v in self.violations}

    def as_dict(self) -> dict:
        return {"ok": self.ok, "violations": [v.as_dict() for v in self.violations]}


def allowed_nodes(instance: VnepInstance, i: NodeId) -> Set[NodeId]:
    """Substrate nodes that are neither forbidden for ``i`` nor too small for it."""
    r, s = instance.request, instance.substrate
    if i not in r.node_set:
        raise UnknownElementError(f"unknown request node {i!r}")
    forbidden = r.forbidden_nodes[i]
    demand = r.node_demand[i]
    return {u for u in s.nodes if u not in forbidden and s.node_capacity[u] >= demand}


def allowed_edges(instance: VnepInstance, ij: Edge) -> Set[Edge]:
    r, s = instance.request, instance.substrate
    ij = tuple(ij)
    if ij not in r.edge_set:
        raise UnknownElementError(f"unknown request edge {ij!r}")
    forbidden = r.forbidden_edges[ij]
    demand = r.edge_demand[ij]
    return {e for e in s.edges if e not in forbidden and s.edge_capacity[e] >= demand}


def _check_references(instance: VnepInstance, m: Mapping) -> None:
    r, s = instance.request, instance.substrate
    for i, u in m.node_map.items():
        if i not in r.node_set:
            raise UnknownElementError(f"mapping references unknown request node {i!r}")
        if u not in s.node_set:
            raise UnknownElementError(f"mapping references unknown substrate node {u!r}")
    for ij, path in m.edge_map.items():
        if ij not in r.edge_set:
            raise UnknownElementError(f"mapping references unknown request edge {ij!r}")
        for e in path:
            if e not in s.edge_set:
                raise UnknownElementError(f"path of {ij!r} uses unknown substrate edge {e!r}")


def _validity_violations(instance: VnepInstance, m: Mapping) -> List[Violation]:
    r = instance.request
    out: List[Violation] = []
    for i in r.nodes:
        if i not in m.node_map:
            out.append(Violation("unmapped-node", i, f"request node {i} has no host"))
            continue
        if m.node_map[i] not in allowed_nodes(instance, i):
            out.append(Violation(
                "node-not-allowed", i,
                f"(a) {i} -> {m.node_map[i]} is forbidden or lacks capacity"))
    for ij in r.edges:
        if ij not in m.edge_map:
            out.append(Violation("unmapped-edge", ij, f"request edge {ij} has no path"))
            continue
        path = m.edge_map[ij]
        i, j = ij
        if i not in m.node_map or j not in m.node_map:
            continue
        src, dst = m.node_map[i], m.node_map[j]
        if (len(path) == 0) != (src == dst):
            out.append(Violation(
                "collocation", ij,
                f"(c) path of {ij} has {len(path)} edges but hosts are {src} and {dst}"))
        if path:
            ok = path[0][0] == src and path[-1][1] == dst and all(
                a[1] == b[0] for a, b in zip(path, path[1:]))
            visited = [path[0][0]] + [e[1] for e in path]
            if not ok:
                out.append(Violation(
                    "path-endpoints", ij, f"(b) path of {ij} does not connect {src} to {dst}"))
            if len(set(visited)) != len(visited):
                out.append(Violation("path-not-simple", ij, f"(b) path of {ij} revisits a node"))
            allowed = allowed_edges(instance, ij)
            for e in path:
                if e not in allowed:
                    out.append(Violation(
                        "edge-not-allowed", (ij, e),
                        f"(d) {e} is forbidden for {ij} or lacks capacity"))
    return out


def is_valid(instance: VnepInstance, m: Mapping) -> Report:
    """Check placement, path shape, collocation and per-element suitability.

    Raises UnknownElementError when ``m`` mentions ids that do not exist.
    """
    _check_references(instance, m)
    return Report(tuple(_validity_violations(instance, m)))


def _compute_allocations(instance: VnepInstance, m: Mapping) -> Allocations:
    s, r = instance.substrate, instance.request
    node_alloc = {u: Fraction(0) for u in s.nodes}
    edge_alloc = {e: Fraction(0) for e in s.edges}
    for i, u in m.node_map.items():
        node_alloc[u] += r.node_demand[i]
    for ij, path in m.edge_map.items():
        for e in path:
            edge_alloc[e] += r.edge_demand[ij]
    return Allocations(node_alloc, edge_alloc)


def allocations(instance: VnepInstance, m: Mapping) -> Allocations:
    report = is_valid(instance, m)
    if not report:
        raise InvalidMappingError(f"mapping is not valid: {[v.detail for v in report.violations]}")
    return _compute_allocations(instance, m)


def _check_factor(name: str, value) -> Fraction:
    value = to_rational(value, allow_inf=False)
    if value < 1:
        raise ValueError(f"{name} must be >= 1, got {value}")
    return value


def _cumulative_violations(instance, m, alpha, beta, gamma) -> List[Violation]:
    s, r, var = instance.substrate, instance.request, instance.variant
    alloc = _compute_allocations(instance, m)
    out: List[Violation] = []
    if var.node_capacities:
        for u in s.nodes:
            limit = scale(alpha, s.node_capacity[u])
            if alloc.node_alloc[u] > limit:
                out.append(Violation(
                    "node-capacity", u, f"allocation {alloc.node_alloc[u]} exceeds {limit}"))
    if var.edge_capacities:
        for e in s.edges:
            limit = scale(beta, s.edge_capacity[e])
            if alloc.edge_alloc[e] > limit:
                out.append(Violation(
                    "edge-capacity", e, f"allocation {alloc.edge_alloc[e]} exceeds {limit}"))
    if var.latency:
        for ij in r.edges:
            bound = scale(gamma, r.edge_latency_bound[ij])
            latency = sum((s.edge_latency[e] for e in m.edge_map.get(ij, ())), Fraction(0))
            if latency > bound:
                out.append(Violation("latency", ij, f"path latency {latency} exceeds {bound}"))
    return out


def is_approx_feasible(instance: VnepInstance, m: Mapping, alpha=1, beta=1, gamma=1) -> Report:
    """Valid mapping whose cumulative loads stay within the scaled limits.

    Validity (the suitability filters) always uses the original capacities;
    only the cumulative allocation and latency checks are scaled.
    """
    alpha = _check_factor("alpha", alpha)
    beta = _check_factor("beta", beta)
    gamma = _check_factor("gamma", gamma)
    _check_references(instance, m)
    violations = _validity_violations(instance, m)
    if violations:
        return Report(tuple(violations))
    return Report(tuple(_cumulative_violations(instance, m, alpha, beta, gamma)))


def is_feasible(instance: VnepInstance, m: Mapping) -> Report:
    return is_approx_feasible(instance, m, 1, 1, 1)


def relax_variant(instance: VnepInstance, target: VariantSpec) -> VnepInstance:
    """Drop the constraint families that ``target`` does not enforce.

    Disabled capacities become INF, disabled forbidden sets become empty and
    a disabled latency family gets INF bounds and zero substrate latencies.
    """
    if not target.enforces_subset_of(instance.variant):
        raise ValueError(f"{target} enforces constraints that {instance.variant} lacks")
    substrate, request = instance.substrate, instance.request
    if not target.latency:
        substrate = replace(substrate, edge_latency={})
    return VnepInstance.normalized(substrate, request, target)


def optional_factors(factors: Optional[Tuple]) -> Tuple[Fraction, Fraction, Fraction]:
    """Turn an optional (alpha, beta, gamma) triple into checked fractions."""
    if factors is None:
        return Fraction(1), Fraction(1), Fraction(1)
    alpha, beta, gamma = factors
    return _check_factor("alpha", alpha), _check_factor("beta", beta), _check_factor("gamma", gamma)


__all__ = [
    "INF", "Report", "Violation", "allowed_nodes", "allowed_edges", "is_valid", "allocations",
    "is_feasible", "is_approx_feasible", "relax_variant", "optional_factors", "is_inf",
]
