"""JSON encodings of instances and mappings (format_version 1)."""

from __future__ import annotations

import json
from typing import Any, Dict, Optional

from .model import (
    Edge,
    InstanceError,
    Mapping,
    RequestGraph,
    SubstrateGraph,
    VariantSpec,
    VnepError,
    VnepInstance,
)
from .rational import format_rational, to_rational

FORMAT_VERSION = 1


class FormatError(VnepError, ValueError):
    """Input document is malformed or has the wrong version."""


def _edge(value) -> Edge:
    if not isinstance(value, (list, tuple)) or len(value) != 2 or \
            not all(isinstance(x, str) for x in value):
        raise FormatError(f"edge must be a 2-element array of node ids, got {value!r}")
    return (value[0], value[1])


def _check_version(doc: Dict[str, Any]) -> None:
    if not isinstance(doc, dict):
        raise FormatError("document must be a JSON object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise FormatError(f"unsupported format_version {doc.get('format_version')!r}")


def instance_to_dict(instance: VnepInstance) -> Dict[str, Any]:
    s, r = instance.substrate, instance.request
    return {
        "format_version": FORMAT_VERSION,
        "variant": instance.variant.name,
        "substrate": {
            "nodes": [{"id": u, "capacity": format_rational(s.node_capacity[u])} for u in s.nodes],
            "edges": [
                {"edge": list(e), "capacity": format_rational(s.edge_capacity[e]),
                 "latency": format_rational(s.edge_latency[e])}
                for e in s.edges
            ],
        },
        "request": {
            "nodes": [
                {"id": i, "demand": format_rational(r.node_demand[i]),
                 "forbidden": sorted(r.forbidden_nodes[i])}
                for i in r.nodes
            ],
            "edges": [
                {"edge": list(ij), "demand": format_rational(r.edge_demand[ij]),
                 "latency_bound": format_rational(r.edge_latency_bound[ij]),
                 "forbidden": [list(e) for e in sorted(r.forbidden_edges[ij])]}
                for ij in r.edges
            ],
        },
    }


def instance_from_dict(doc: Dict[str, Any]) -> VnepInstance:
    _check_version(doc)
    try:
        variant = VariantSpec.parse(doc["variant"])
        sub, req = doc["substrate"], doc["request"]
        s_nodes = [n["id"] for n in sub["nodes"]]
        s_edges = [_edge(e["edge"]) for e in sub["edges"]]
        substrate = SubstrateGraph(
            s_nodes, s_edges,
            node_capacity={n["id"]: to_rational(n.get("capacity", "inf")) for n in sub["nodes"]},
            edge_capacity={_edge(e["edge"]): to_rational(e.get("capacity", "inf"))
                           for e in sub["edges"]},
            edge_latency={_edge(e["edge"]): to_rational(e.get("latency", 0), allow_inf=False)
                          for e in sub["edges"]},
        )
        request = RequestGraph(
            [n["id"] for n in req["nodes"]],
            [_edge(e["edge"]) for e in req["edges"]],
            node_demand={n["id"]: to_rational(n.get("demand", 0), allow_inf=False)
                         for n in req["nodes"]},
            edge_demand={_edge(e["edge"]): to_rational(e.get("demand", 0), allow_inf=False)
                         for e in req["edges"]},
            edge_latency_bound={_edge(e["edge"]): to_rational(e.get("latency_bound", "inf"))
                                for e in req["edges"]},
            forbidden_nodes={n["id"]: frozenset(n.get("forbidden", ())) for n in req["nodes"]},
            forbidden_edges={_edge(e["edge"]): frozenset(_edge(x) for x in e.get("forbidden", ()))
                             for e in req["edges"]},
        )
        return VnepInstance(substrate, request, variant)
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError, InstanceError) as exc:
        raise FormatError(f"malformed instance document: {exc}") from exc


def edge_key(ij: Edge) -> str:
    return f"{ij[0]}->{ij[1]}"


def _split_key(key: str, request: Optional[RequestGraph]) -> Edge:
    parts = key.split("->")
    candidates = [("->".join(parts[:k]), "->".join(parts[k:])) for k in range(1, len(parts))]
    if request is not None:
        candidates = [c for c in candidates if c in request.edge_set] or candidates
    if len(candidates) != 1:
        raise FormatError(f"cannot split edge key {key!r} into two node ids")
    return candidates[0]


def mapping_to_dict(m: Mapping) -> Dict[str, Any]:
    edge_map: Dict[str, Any] = {}
    for ij, path in m.edge_map.items():
        key = edge_key(ij)
        if key in edge_map:
            raise FormatError(f"request edges {ij} and another edge share the key {key!r}")
        edge_map[key] = [list(e) for e in path]
    return {"format_version": FORMAT_VERSION, "node_map": dict(m.node_map), "edge_map": edge_map}


def mapping_from_dict(doc: Dict[str, Any], request: Optional[RequestGraph] = None) -> Mapping:
    _check_version(doc)
    try:
        node_map = doc["node_map"]
        if not isinstance(node_map, dict) or not all(
                isinstance(k, str) and isinstance(v, str) for k, v in node_map.items()):
            raise FormatError("node_map must map node ids to node ids")
        edge_map = {_split_key(k, request): tuple(_edge(e) for e in v)
                    for k, v in doc["edge_map"].items()}
        return Mapping(node_map, edge_map)
    except FormatError:
        raise
    except (KeyError, TypeError, AttributeError) as exc:
        raise FormatError(f"malformed mapping document: {exc}") from exc


def load_json(path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def dump_json(doc: Any, path) -> None:
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def load_instance(path) -> VnepInstance:
    return instance_from_dict(load_json(path))


def load_mapping(path, request: Optional[RequestGraph] = None) -> Mapping:
    return mapping_from_dict(load_json(path), request)
