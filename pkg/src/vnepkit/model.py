"""Instance data model: substrate, request, variant flags and mappings.

All containers are frozen after construction. Missing per-element values
are filled with the neutral default (capacity INF, demand 0, latency 0,
latency bound INF, empty forbidden set), so every lookup is total.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Tuple

from .rational import INF, Rational, is_inf, to_rational

NodeId = str
Edge = Tuple[NodeId, NodeId]
Path = Tuple[Edge, ...]


class VnepError(Exception):
    """Base class for errors raised by this package."""


class InstanceError(VnepError, ValueError):
    """A graph or instance violates its structural invariants."""


class UnknownElementError(VnepError, KeyError):
    """A node or edge id does not exist in the graph it refers to."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown element"


class InvalidMappingError(VnepError, ValueError):
    """An operation requiring a valid mapping received an invalid one."""


def _check_graph(nodes: Iterable, edges: Iterable, what: str) -> tuple[tuple, tuple]:
    nodes = tuple(nodes)
    for u in nodes:
        if not isinstance(u, str):
            raise InstanceError(f"{what}: node ids must be strings, got {u!r}")
    if len(set(nodes)) != len(nodes):
        raise InstanceError(f"{what}: duplicate node ids")
    node_set = set(nodes)
    out = []
    for e in edges:
        u, v = e
        if u not in node_set or v not in node_set:
            raise InstanceError(f"{what}: edge {(u, v)} has an endpoint outside the node set")
        if u == v:
            raise InstanceError(f"{what}: self-loop at {u!r}")
        out.append((u, v))
    if len(set(out)) != len(out):
        raise InstanceError(f"{what}: duplicate edges (multigraphs are not supported)")
    return nodes, tuple(out)


def _total(values, keys, default, what, *, allow_inf):
    values = dict(values or {})
    unknown = set(values) - set(keys)
    if unknown:
        raise InstanceError(f"{what} given for unknown elements: {sorted(unknown)!r}")
    out = {}
    for k in keys:
        val = to_rational(values.get(k, default), allow_inf=allow_inf)
        if val < 0:
            raise InstanceError(f"{what} of {k!r} is negative")
        out[k] = val
    return out


@dataclass(frozen=True)
class SubstrateGraph:
    """Directed simple graph with node/edge capacities and edge latencies."""

    nodes: Tuple[NodeId, ...]
    edges: Tuple[Edge, ...]
    node_capacity: Dict[NodeId, Rational] = field(default_factory=dict)
    edge_capacity: Dict[Edge, Rational] = field(default_factory=dict)
    edge_latency: Dict[Edge, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        nodes, edges = _check_graph(self.nodes, self.edges, "substrate")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(
            self, "node_capacity",
            _total(self.node_capacity, nodes, INF, "node capacity", allow_inf=True))
        object.__setattr__(
            self, "edge_capacity",
            _total(self.edge_capacity, edges, INF, "edge capacity", allow_inf=True))
        object.__setattr__(
            self, "edge_latency",
            _total(self.edge_latency, edges, 0, "edge latency", allow_inf=False))

    @cached_property
    def edge_set(self) -> FrozenSet[Edge]:
        return frozenset(self.edges)

    @cached_property
    def node_set(self) -> FrozenSet[NodeId]:
        return frozenset(self.nodes)

    @cached_property
    def out_edges(self) -> Dict[NodeId, Tuple[Edge, ...]]:
        adj: Dict[NodeId, list] = {u: [] for u in self.nodes}
        for e in self.edges:
            adj[e[0]].append(e)
        return {u: tuple(sorted(es)) for u, es in adj.items()}

    @cached_property
    def in_edges(self) -> Dict[NodeId, Tuple[Edge, ...]]:
        adj: Dict[NodeId, list] = {u: [] for u in self.nodes}
        for e in self.edges:
            adj[e[1]].append(e)
        return {u: tuple(sorted(es)) for u, es in adj.items()}


@dataclass(frozen=True)
class RequestGraph:
    """Directed simple graph with demands, latency bounds and forbidden sets."""

    nodes: Tuple[NodeId, ...]
    edges: Tuple[Edge, ...]
    node_demand: Dict[NodeId, Fraction] = field(default_factory=dict)
    edge_demand: Dict[Edge, Fraction] = field(default_factory=dict)
    edge_latency_bound: Dict[Edge, Rational] = field(default_factory=dict)
    forbidden_nodes: Dict[NodeId, FrozenSet[NodeId]] = field(default_factory=dict)
    forbidden_edges: Dict[Edge, FrozenSet[Edge]] = field(default_factory=dict)

    def __post_init__(self):
        nodes, edges = _check_graph(self.nodes, self.edges, "request")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(
            self, "node_demand",
            _total(self.node_demand, nodes, 0, "node demand", allow_inf=False))
        object.__setattr__(
            self, "edge_demand",
            _total(self.edge_demand, edges, 0, "edge demand", allow_inf=False))
        object.__setattr__(
            self, "edge_latency_bound",
            _total(self.edge_latency_bound, edges, INF, "latency bound", allow_inf=True))

        fn = dict(self.forbidden_nodes or {})
        unknown = sorted(set(fn) - set(nodes))
        if unknown:
            raise InstanceError(f"forbidden nodes given for unknown request nodes: {unknown!r}")
        object.__setattr__(self, "forbidden_nodes", {i: frozenset(fn.get(i, ())) for i in nodes})
        fe = {tuple(k): v for k, v in (self.forbidden_edges or {}).items()}
        if set(fe) - set(edges):
            raise InstanceError("forbidden edges given for unknown request edges")
        object.__setattr__(
            self, "forbidden_edges",
            {ij: frozenset(tuple(e) for e in fe.get(ij, ())) for ij in edges})

    @cached_property
    def edge_set(self) -> FrozenSet[Edge]:
        return frozenset(self.edges)

    @cached_property
    def node_set(self) -> FrozenSet[NodeId]:
        return frozenset(self.nodes)


_VARIANT_RE = re.compile(r"^\s*(V?E?|-)\s*\|\s*(N?R?L?|-)\s*$")
_SHORTHAND_RE = re.compile(r"^\s*(V?E?)\s*-\s*$")  # "VE-" is shorthand for "VE|-"


@dataclass(frozen=True)
class VariantSpec:
    """Which of the five constraint families are enforced."""

    node_capacities: bool = False
    edge_capacities: bool = False
    node_placement: bool = False
    routing: bool = False
    latency: bool = False

    @property
    def flags(self) -> Tuple[bool, ...]:
        return (self.node_capacities, self.edge_capacities, self.node_placement,
                self.routing, self.latency)

    @property
    def name(self) -> str:
        cap = ("V" if self.node_capacities else "") + ("E" if self.edge_capacities else "")
        add = ("N" if self.node_placement else "") + ("R" if self.routing else "") + \
            ("L" if self.latency else "")
        return f"{cap or '-'}|{add or '-'}"

    def __str__(self):
        return self.name

    def enforces_subset_of(self, other: "VariantSpec") -> bool:
        return all(o or not s for s, o in zip(self.flags, other.flags))

    @classmethod
    def parse(cls, text: str) -> "VariantSpec":
        """Parse ``"VE|-"``, ``"-|NL"`` etc., or one of the short names ve/en/vr/nr/nl."""
        key = text.strip().lower()
        if key in SHORT_NAMES:
            return SHORT_NAMES[key]
        norm = text.replace("\u2212", "-").upper()
        short = _SHORTHAND_RE.match(norm)
        if short and short.group(1):
            norm = short.group(1) + "|-"
        m = _VARIANT_RE.match(norm)
        if not m or not m.group(1) or not m.group(2):
            raise ValueError(f"unknown variant {text!r}")
        cap, add = m.group(1), m.group(2)
        return cls(node_capacities="V" in cap, edge_capacities="E" in cap,
                   node_placement="N" in add, routing="R" in add, latency="L" in add)


VE = VariantSpec(node_capacities=True, edge_capacities=True)
EN = VariantSpec(edge_capacities=True, node_placement=True)
VR = VariantSpec(node_capacities=True, routing=True)
NR = VariantSpec(node_placement=True, routing=True)
NL = VariantSpec(node_placement=True, latency=True)
UNRESTRICTED = VariantSpec()

SHORT_NAMES = {"ve": VE, "en": EN, "vr": VR, "nr": NR, "nl": NL}
GADGET_VARIANTS = (VE, EN, VR, NR, NL)


@dataclass(frozen=True)
class VnepInstance:
    """A substrate/request pair in normalized form for ``variant``.

    Normalized means: disabled capacity families are INF everywhere, a
    disabled latency flag leaves every latency bound INF, and disabled
    placement/routing flags leave the forbidden sets empty. Use
    :meth:`normalized` to build one from arbitrary data.
    """

    substrate: SubstrateGraph
    request: RequestGraph
    variant: VariantSpec

    def __post_init__(self):
        s, r, var = self.substrate, self.request, self.variant
        for i, forb in r.forbidden_nodes.items():
            if not forb <= s.node_set:
                raise InstanceError(f"forbidden nodes of {i!r} reference unknown substrate nodes")
            if forb and not var.node_placement:
                raise InstanceError(f"{var}: forbidden nodes set but placement flag is off")
        for ij, forb in r.forbidden_edges.items():
            if not forb <= s.edge_set:
                raise InstanceError(f"forbidden edges of {ij!r} reference unknown substrate edges")
            if forb and not var.routing:
                raise InstanceError(f"{var}: forbidden edges set but routing flag is off")
        if not var.node_capacities and any(not is_inf(c) for c in s.node_capacity.values()):
            raise InstanceError(f"{var}: node capacities must be inf when not enforced")
        if not var.edge_capacities and any(not is_inf(c) for c in s.edge_capacity.values()):
            raise InstanceError(f"{var}: edge capacities must be inf when not enforced")
        if not var.latency and any(not is_inf(b) for b in r.edge_latency_bound.values()):
            raise InstanceError(f"{var}: latency bounds must be inf when not enforced")

    @classmethod
    def normalized(cls, substrate: SubstrateGraph, request: RequestGraph,
                   variant: VariantSpec) -> "VnepInstance":
        """Neutralize every constraint family that ``variant`` does not enforce."""
        if not variant.node_capacities:
            substrate = replace(substrate, node_capacity={})
        if not variant.edge_capacities:
            substrate = replace(substrate, edge_capacity={})
        if not variant.latency:
            request = replace(request, edge_latency_bound={})
        if not variant.node_placement:
            request = replace(request, forbidden_nodes={})
        if not variant.routing:
            request = replace(request, forbidden_edges={})
        return cls(substrate, request, variant)


@dataclass(frozen=True)
class Mapping:
    """Node map plus one (possibly empty) substrate path per request edge."""

    node_map: Dict[NodeId, NodeId]
    edge_map: Dict[Edge, Path]

    def __post_init__(self):
        object.__setattr__(self, "node_map", dict(self.node_map))
        object.__setattr__(
            self, "edge_map",
            {tuple(ij): tuple(tuple(e) for e in path) for ij, path in self.edge_map.items()})


@dataclass(frozen=True)
class Allocations:
    node_alloc: Dict[NodeId, Fraction]
    edge_alloc: Dict[Edge, Fraction]
