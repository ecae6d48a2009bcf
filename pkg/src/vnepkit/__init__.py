"""Exact tools for the virtual network embedding decision problem.

Core model with exact rational resources, a backtracking decision solver,
an integer-programming model writer, and the 3-SAT / edge-disjoint-paths
reductions that make the restricted variants hard, together with brute-force
oracles to check them against.
"""

from .cnf import CnfFormula, parse_dimacs, to_dimacs
from .model import (
    EN,
    GADGET_VARIANTS,
    NL,
    NR,
    UNRESTRICTED,
    VE,
    VR,
    Allocations,
    InstanceError,
    InvalidMappingError,
    Mapping,
    RequestGraph,
    SubstrateGraph,
    UnknownElementError,
    VariantSpec,
    VnepError,
    VnepInstance,
)
from .rational import INF, to_rational
from .sattools import evaluate, random_formula, sat_oracle
from .solver import SolveLimits, SolveResult, Status, solve_decision, verify_certificate
from .validation import (
    allocations,
    allowed_edges,
    allowed_nodes,
    is_approx_feasible,
    is_feasible,
    is_valid,
    relax_variant,
)

__version__ = "0.1.0"

__all__ = [
    "CnfFormula", "parse_dimacs", "to_dimacs",
    "EN", "NL", "NR", "GADGET_VARIANTS", "UNRESTRICTED", "VE", "VR",
    "Allocations", "InstanceError", "InvalidMappingError", "Mapping", "RequestGraph",
    "SubstrateGraph", "UnknownElementError", "VariantSpec", "VnepError", "VnepInstance",
    "INF", "to_rational", "evaluate", "random_formula", "sat_oracle",
    "SolveLimits", "SolveResult", "Status", "solve_decision", "verify_certificate",
    "allocations", "allowed_edges", "allowed_nodes", "is_approx_feasible", "is_feasible",
    "is_valid", "relax_variant",
]
