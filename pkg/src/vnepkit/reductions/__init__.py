"""Reductions from 3-SAT and directed edge-disjoint paths to VNEP variants."""

from .diredpwc import DirEdpwcInstance, reduce_diredpwc_en, reduce_diredpwc_ve
from .framework import (
    Decomposed,
    LocalAssignment,
    Ordered,
    build_request,
    build_substrate,
    first_occurrence,
    is_ordered,
    local_satisfying_assignments,
    normalize,
)
from .gadgets import (
    DecodeError,
    GadgetArtifacts,
    GadgetError,
    decode_mapping,
    encode_assignment,
    instantiate_gadget,
    registry_from_dict,
    registry_to_dict,
)
from .planar import build_formula_graph, check_4p3c, check_request_structure

__all__ = [
    "DirEdpwcInstance", "reduce_diredpwc_en", "reduce_diredpwc_ve",
    "Decomposed", "LocalAssignment", "Ordered", "build_request", "build_substrate",
    "first_occurrence", "is_ordered", "local_satisfying_assignments", "normalize",
    "DecodeError", "GadgetArtifacts", "GadgetError", "decode_mapping", "encode_assignment",
    "instantiate_gadget", "registry_from_dict", "registry_to_dict",
    "build_formula_graph", "check_4p3c", "check_request_structure",
]
