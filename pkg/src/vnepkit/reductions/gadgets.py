"""Per-variant gadget instantiation plus the assignment encoder/decoder."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Union

from ..cnf import CnfFormula
from ..model import (
    EN,
    GADGET_VARIANTS,
    NL,
    NR,
    VE,
    VR,
    Mapping,
    NodeId,
    RequestGraph,
    SubstrateGraph,
    VariantSpec,
    VnepError,
    VnepInstance,
)
from ..rational import format_rational, to_rational
from ..sattools import Assignment, evaluate
from .framework import (
    LocalAssignment,
    build_request,
    build_substrate,
    is_ordered,
)


class GadgetError(VnepError, ValueError):
    """Gadget preconditions violated (unordered formula, bad parameters)."""


class DecodeError(VnepError, ValueError):
    """Mapping does not place clauses on their groups with one-edge paths."""


@dataclass(frozen=True)
class GadgetArtifacts:
    formula: CnfFormula
    instance: VnepInstance
    node_registry: Dict[NodeId, LocalAssignment]
    request_registry: Dict[NodeId, int]
    parameters: Dict[str, Any] = field(default_factory=dict)

    def group(self, i: int) -> list:
        return [u for u, a in self.node_registry.items() if a.clause_index == i]

    @property
    def clause_node(self) -> Dict[int, NodeId]:
        return {i: v for v, i in self.request_registry.items()}

    def solve_factors(self):
        """(alpha, beta, gamma) matching the approximation the gadget was built for."""
        one = Fraction(1)
        return (self.parameters.get("alpha", one), one, self.parameters.get("gamma", one))


def _variant(variant: Union[str, VariantSpec]) -> VariantSpec:
    v = VariantSpec.parse(variant) if isinstance(variant, str) else variant
    if v not in GADGET_VARIANTS:
        raise GadgetError(f"no gadget for variant {v}")
    return v


def instantiate_gadget(formula: CnfFormula, variant: Union[str, VariantSpec], *,
                       alpha_eps=None, gamma_eps=None, lam=None) -> GadgetArtifacts:
    """Build the VNEP instance whose feasibility matches satisfiability.

    Capacity variants use node capacity ``1 + lam*(M - i)`` on clause group
    i and capacity ``1 + lam*j`` on edges entering group j, with demands
    equal to those values. ``lam`` defaults to ``1/(2M)``, or ``eps/(4M)``
    under ``alpha_eps``. ``gamma_eps`` only records the latency slack
    ``gamma = 2 - eps`` the gadget is meant to be solved with.
    """
    variant = _variant(variant)
    if not is_ordered(formula):
        raise GadgetError("formula is not clause-ordered (normalize it and use its components)")
    if alpha_eps is not None and gamma_eps is not None:
        raise GadgetError("alpha_eps and gamma_eps are mutually exclusive")
    m = formula.num_clauses
    params: Dict[str, Any] = {"variant": variant.name, "M": m}

    if alpha_eps is not None:
        eps = to_rational(alpha_eps, allow_inf=False)
        if not 0 < eps < 1:
            raise GadgetError("alpha_eps must lie in (0, 1)")
        if variant not in (VE, VR):
            raise GadgetError("alpha_eps applies to VE|- and V|R only")
        params.update(alpha_eps=eps, alpha=2 - eps)
    if gamma_eps is not None:
        eps = to_rational(gamma_eps, allow_inf=False)
        if not 0 < eps <= 1:
            raise GadgetError("gamma_eps must lie in (0, 1]")
        if variant != NL:
            raise GadgetError("gamma_eps applies to -|NL only")
        params.update(gamma_eps=eps, gamma=2 - eps)

    uses_capacity = variant.node_capacities or variant.edge_capacities
    if uses_capacity and m > 0:
        limit = Fraction(1, m) if alpha_eps is None else params["alpha_eps"] / (2 * m)
        if lam is None:
            lam = Fraction(1, 2 * m) if alpha_eps is None else params["alpha_eps"] / (4 * m)
        lam = to_rational(lam, allow_inf=False)
        if not 0 < lam < limit:
            raise GadgetError(f"lambda must lie in (0, {limit})")
        params["lambda"] = lam
    elif lam is not None:
        raise GadgetError(f"lambda has no effect for {variant}")

    skel_s, node_registry = build_substrate(formula)
    skel_r, request_registry = build_request(formula)
    group_of = {u: a.clause_index for u, a in node_registry.items()}
    clause_of = request_registry

    node_cap, edge_cap, latency = {}, {}, {}
    node_dem, edge_dem, bound = {}, {}, {}
    forb_nodes, forb_edges = {}, {}
    if variant.node_capacities:
        node_cap = {u: 1 + lam * (m - group_of[u]) for u in skel_s.nodes}
        node_dem = {v: 1 + lam * (m - clause_of[v]) for v in skel_r.nodes}
    if variant.edge_capacities:
        edge_cap = {e: 1 + lam * group_of[e[1]] for e in skel_s.edges}
        edge_dem = {e: 1 + lam * clause_of[e[1]] for e in skel_r.edges}
    if variant.node_placement:
        forb_nodes = {v: frozenset(u for u in skel_s.nodes if group_of[u] != clause_of[v])
                      for v in skel_r.nodes}
    if variant.routing:
        forb_edges = {
            vw: frozenset(e for e in skel_s.edges
                          if (group_of[e[0]], group_of[e[1]]) != (clause_of[vw[0]], clause_of[vw[1]]))
            for vw in skel_r.edges}
    if variant.latency:
        latency = {e: 1 for e in skel_s.edges}
        bound = {e: 1 for e in skel_r.edges}

    substrate = SubstrateGraph(skel_s.nodes, skel_s.edges, node_cap, edge_cap, latency)
    request = RequestGraph(skel_r.nodes, skel_r.edges, node_dem, edge_dem, bound,
                           forb_nodes, forb_edges)
    instance = VnepInstance.normalized(substrate, request, variant)
    return GadgetArtifacts(formula, instance, node_registry, request_registry, params)


def encode_assignment(g: GadgetArtifacts, assignment: Assignment) -> Mapping:
    """Place each clause on the local assignment agreeing with ``assignment``
    and route each request edge over the direct substrate edge."""
    if not evaluate(g.formula, assignment):
        raise ValueError("assignment does not satisfy the formula")
    by_clause: Dict[int, NodeId] = {}
    for u, a in g.node_registry.items():
        if all(assignment[k] == val for k, val in a.values):
            by_clause[a.clause_index] = u
    node_map = {v: by_clause[i] for v, i in g.request_registry.items()}
    edge_map = {}
    edges = g.instance.substrate.edge_set
    for ij in g.instance.request.edges:
        e = (node_map[ij[0]], node_map[ij[1]])
        if e not in edges:
            raise AssertionError(f"gadget lacks the direct edge {e}")
        edge_map[ij] = (e,)
    return Mapping(node_map, edge_map)


def decode_mapping(g: GadgetArtifacts, m: Mapping) -> Assignment:
    """Recover a satisfying assignment by extending it clause by clause.

    Requires every clause node on its own group and every request edge on
    a single substrate edge. Literals outside every clause default to False.
    """
    for v, i in g.request_registry.items():
        u = m.node_map.get(v)
        if u not in g.node_registry or g.node_registry[u].clause_index != i:
            raise DecodeError(f"{v} is not placed on a node of clause group {i}")
    for ij in g.instance.request.edges:
        if len(m.edge_map.get(ij, ())) != 1:
            raise DecodeError(f"request edge {ij} is not embedded on a single substrate edge")
    assignment: Assignment = {}
    for i in range(1, g.formula.num_clauses + 1):
        local = g.node_registry[m.node_map[g.clause_node[i]]]
        for k, val in local.values:
            if assignment.setdefault(k, val) != val:
                raise AssertionError(f"clause {i} contradicts an earlier value of x{k}")
    for k in range(1, g.formula.num_literals + 1):
        assignment.setdefault(k, False)
    return assignment


def registry_to_dict(g: GadgetArtifacts) -> Dict[str, Any]:
    params = {k: format_rational(v) if isinstance(v, Fraction) else v
              for k, v in g.parameters.items()}
    return {
        "format_version": 1,
        "formula": {"num_literals": g.formula.num_literals,
                    "clauses": [list(c) for c in g.formula.clauses]},
        "parameters": params,
        "node_registry": {
            u: {"clause": a.clause_index, "assignment": {str(k): v for k, v in a.values}}
            for u, a in g.node_registry.items()},
        "request_registry": dict(g.request_registry),
    }


def registry_from_dict(instance: VnepInstance, doc: Dict[str, Any]) -> GadgetArtifacts:
    if not isinstance(doc, dict) or doc.get("format_version") != 1:
        raise DecodeError("unsupported registry format")
    try:
        f = doc["formula"]
        formula = CnfFormula(int(f["num_literals"]), tuple(tuple(c) for c in f["clauses"]))
        nodes = {
            u: LocalAssignment(int(entry["clause"]),
                               tuple(sorted((int(k), bool(v))
                                            for k, v in entry["assignment"].items())))
            for u, entry in doc["node_registry"].items()}
        request_registry = {v: int(i) for v, i in doc["request_registry"].items()}
        params = dict(doc.get("parameters", {}))
    except (KeyError, TypeError, ValueError) as exc:
        raise DecodeError(f"malformed registry: {exc}") from exc
    for key in ("lambda", "alpha_eps", "alpha", "gamma_eps", "gamma"):
        if key in params:
            params[key] = to_rational(params[key], allow_inf=False)
    return GadgetArtifacts(formula, instance, nodes, request_registry, params)


__all__ = [
    "GadgetArtifacts", "GadgetError", "DecodeError", "instantiate_gadget", "encode_assignment",
    "decode_mapping", "registry_to_dict", "registry_from_dict", "VE", "EN", "VR", "NR", "NL",
]
