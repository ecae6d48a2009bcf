"""Clause-ordered construction shared by all 3-SAT gadgets.

One substrate node per (clause, satisfying local assignment); substrate
edges join assignments of two clauses that agree on every shared literal,
provided the earlier clause is where one of the shared literals first
occurs. The request has one node per clause with the matching edges.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Tuple, Union

from ..cnf import CnfFormula
from ..model import Edge, NodeId, RequestGraph, SubstrateGraph

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LocalAssignment:
    """Truth values for the literals of one clause that satisfy it."""

    clause_index: int
    values: Tuple[Tuple[int, bool], ...]

    def __getitem__(self, literal: int) -> bool:
        for k, v in self.values:
            if k == literal:
                return v
        raise KeyError(literal)

    def as_dict(self) -> Dict[int, bool]:
        return dict(self.values)

    @property
    def bits(self) -> str:
        return "".join("T" if v else "F" for _, v in self.values)

    def agrees_with(self, other: "LocalAssignment", literals) -> bool:
        mine, theirs = self.as_dict(), other.as_dict()
        return all(mine[k] == theirs[k] for k in literals)


def first_occurrence(formula: CnfFormula) -> Dict[int, int]:
    """Index (1-based) of the first clause containing each occurring literal."""
    first: Dict[int, int] = {}
    for i, lits in enumerate(formula.literal_sets(), 1):
        for k in sorted(lits):
            first.setdefault(k, i)
    unused = sorted(set(range(1, formula.num_literals + 1)) - set(first))
    if unused:
        log.debug("literals that occur in no clause get no gadget nodes: %s", unused)
    return first


def local_satisfying_assignments(formula: CnfFormula, i: int) -> List[LocalAssignment]:
    """Satisfying assignments of clause ``i`` in binary counting order, F < T."""
    if not 1 <= i <= formula.num_clauses:
        raise IndexError(f"clause index {i} outside 1..{formula.num_clauses}")
    clause = formula.clauses[i - 1]
    literals = [abs(x) for x in clause]
    sign = {abs(x): x > 0 for x in clause}
    out = []
    for bits in product((False, True), repeat=len(literals)):
        if any(b == sign[k] for k, b in zip(literals, bits)):
            out.append(LocalAssignment(i, tuple(zip(literals, bits))))
    return out


@dataclass(frozen=True)
class Ordered:
    """Clause order in which every clause after the first shares a literal
    with an earlier one. ``clause_order`` holds the original 1-based indices."""

    formula: CnfFormula
    clause_order: Tuple[int, ...]


@dataclass(frozen=True)
class Decomposed:
    """Literal-disjoint components, each already ordered."""

    components: Tuple[Ordered, ...]


def normalize(formula: CnfFormula) -> Union[Ordered, Decomposed]:
    """Greedy clause ordering; splits off literal-disjoint parts when it stalls.

    Starts from the lowest-index clause and repeatedly appends the
    lowest-index remaining clause that shares a literal with the ones
    already placed.
    """
    m = formula.num_clauses
    if m == 0:
        return Ordered(formula, ())
    lit_sets = formula.literal_sets()
    remaining = list(range(1, m + 1))
    order = [remaining.pop(0)]
    seen = set(lit_sets[order[0] - 1])
    while remaining:
        pick = next((i for i in remaining if lit_sets[i - 1] & seen), None)
        if pick is None:
            break
        remaining.remove(pick)
        order.append(pick)
        seen |= lit_sets[pick - 1]
    head = Ordered(formula.reordered(order), tuple(order))
    if not remaining:
        return head
    rest = normalize(formula.reordered(remaining))
    parts = rest.components if isinstance(rest, Decomposed) else (rest,)
    lifted = tuple(
        Ordered(p.formula, tuple(remaining[k - 1] for k in p.clause_order)) for p in parts)
    return Decomposed((head,) + lifted)


def is_ordered(formula: CnfFormula) -> bool:
    """True iff each clause after the first shares a literal with an earlier clause."""
    seen: set = set()
    for i, lits in enumerate(formula.literal_sets()):
        if i > 0 and not lits & seen:
            return False
        seen |= lits
    return True


def node_id(a: LocalAssignment) -> NodeId:
    return f"a{a.clause_index}_{a.bits}"


def clause_node_id(i: int) -> NodeId:
    return f"v{i}"


def _linked_pairs(formula: CnfFormula):
    """(i, j, shared literals) for i < j where a shared literal first occurs in i."""
    first = first_occurrence(formula)
    lit_sets = formula.literal_sets()
    m = formula.num_clauses
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            shared = lit_sets[i - 1] & lit_sets[j - 1]
            if any(first[k] == i for k in shared):
                yield i, j, sorted(shared)


def build_substrate(formula: CnfFormula) -> Tuple[SubstrateGraph, Dict[NodeId, LocalAssignment]]:
    """Substrate skeleton (no capacities yet) and node-id -> local assignment."""
    groups = {i: local_satisfying_assignments(formula, i)
              for i in range(1, formula.num_clauses + 1)}
    registry = {node_id(a): a for i in groups for a in groups[i]}
    edges: List[Edge] = []
    for i, j, shared in _linked_pairs(formula):
        for a in groups[i]:
            for b in groups[j]:
                if a.agrees_with(b, shared):
                    edges.append((node_id(a), node_id(b)))
    return SubstrateGraph(tuple(registry), tuple(edges)), registry


def build_request(formula: CnfFormula) -> Tuple[RequestGraph, Dict[NodeId, int]]:
    """Request skeleton (no demands yet) and node-id -> clause index."""
    registry = {clause_node_id(i): i for i in range(1, formula.num_clauses + 1)}
    edges = [(clause_node_id(i), clause_node_id(j)) for i, j, _ in _linked_pairs(formula)]
    return RequestGraph(tuple(registry), tuple(edges)), registry
