"""Formula graph, 4P3C condition checks and request-structure checks.

Planarity is only decided exactly for graphs with at most
``EXACT_PLANARITY_LIMIT`` vertices, by searching for a K5 or K3,3 minor.
Larger graphs only get the Euler edge-count bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Optional, Set, Tuple

from ..cnf import CnfFormula
from ..model import RequestGraph

EXACT_PLANARITY_LIMIT = 12
THREE_CONNECTIVITY_LIMIT = 100

UEdge = FrozenSet


@dataclass(frozen=True)
class FormulaGraph:
    """Bipartite clause/literal incidence graph."""

    clause_nodes: Tuple[str, ...]
    literal_nodes: Tuple[str, ...]
    edges: Tuple[Tuple[str, str], ...]  # (clause node, literal node)

    @property
    def num_vertices(self) -> int:
        return len(self.clause_nodes) + len(self.literal_nodes)

    def adjacency(self) -> Dict[str, Set[str]]:
        adj: Dict[str, Set[str]] = {v: set() for v in self.clause_nodes + self.literal_nodes}
        for c, x in self.edges:
            adj[c].add(x)
            adj[x].add(c)
        return adj


def build_formula_graph(formula: CnfFormula) -> FormulaGraph:
    clause_nodes = tuple(f"C{i}" for i in range(1, formula.num_clauses + 1))
    literal_nodes = tuple(f"x{k}" for k in formula.literals)
    edges = tuple((f"C{i}", f"x{k}")
                  for i in range(1, formula.num_clauses + 1)
                  for k in formula.clause_literals(i))
    return FormulaGraph(clause_nodes, literal_nodes, edges)


# -- planarity ---------------------------------------------------------------

def _reduce(adj: Dict) -> Dict:
    """Drop vertices of degree <= 1 and suppress degree-2 vertices.

    Both operations preserve planarity in either direction.
    """
    adj = {v: set(ns) for v, ns in adj.items()}
    changed = True
    while changed:
        changed = False
        for v in list(adj):
            ns = adj.get(v)
            if ns is None:
                continue
            if len(ns) <= 1:
                for w in ns:
                    adj[w].discard(v)
                del adj[v]
                changed = True
            elif len(ns) == 2:
                a, b = ns
                adj[a].discard(v)
                adj[b].discard(v)
                adj[a].add(b)
                adj[b].add(a)
                del adj[v]
                changed = True
    return adj


def _num_edges(adj: Dict) -> int:
    return sum(len(ns) for ns in adj.values()) // 2


def _has_k5_subgraph(adj: Dict) -> bool:
    cands = [v for v, ns in adj.items() if len(ns) >= 4]
    for five in combinations(cands, 5):
        if all(b in adj[a] for a, b in combinations(five, 2)):
            return True
    return False


def _has_k33_subgraph(adj: Dict) -> bool:
    cands = [v for v, ns in adj.items() if len(ns) >= 3]
    for six in combinations(cands, 6):
        first = six[0]
        for rest in combinations(six[1:], 2):
            left = (first,) + rest
            right = [v for v in six if v not in left]
            if all(b in adj[a] for a in left for b in right):
                return True
    return False


def _contract(adj: Dict, a, b) -> Dict:
    merged = a | b
    out = {}
    for v, ns in adj.items():
        if v in (a, b):
            continue
        ns2 = {merged if w in (a, b) else w for w in ns}
        out[v] = ns2
    out[merged] = (adj[a] | adj[b]) - {a, b}
    return out


def _freeze(adj: Dict) -> FrozenSet:
    return frozenset(frozenset((v, w)) for v, ns in adj.items() for w in ns)


def _has_kuratowski_minor(adj: Dict, seen: Set) -> bool:
    adj = _reduce(adj)
    n, m = len(adj), _num_edges(adj)
    if n < 5:
        return False
    if m > 3 * n - 6:
        return True
    key = _freeze(adj)
    if key in seen:
        return False
    seen.add(key)
    if _has_k5_subgraph(adj) or _has_k33_subgraph(adj):
        return True
    for a in adj:
        for b in adj[a]:
            if sorted(a) < sorted(b) and _has_kuratowski_minor(_contract(adj, a, b), seen):
                return True
    return False


def is_planar_small(vertices: Iterable, edges: Iterable[Tuple]) -> bool:
    """Exact planarity for small graphs via exhaustive K5 / K3,3 minor search.

    Every minor is reached by contracting edges of the reduced graph, so the
    search is complete; vertex labels are frozensets of the merged originals.
    """
    vertices = list(vertices)
    index = {v: k for k, v in enumerate(vertices)}
    adj: Dict = {frozenset([index[v]]): set() for v in vertices}
    for a, b in edges:
        if a == b:
            continue
        fa, fb = frozenset([index[a]]), frozenset([index[b]])
        adj[fa].add(fb)
        adj[fb].add(fa)
    return not _has_kuratowski_minor(adj, set())


def _connected_without(adj: Dict[str, Set[str]], removed: Set[str]) -> bool:
    rest = [v for v in adj if v not in removed]
    if not rest:
        return True
    stack, seen = [rest[0]], {rest[0]}
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(rest)


def is_three_connected(adj: Dict[str, Set[str]]) -> bool:
    """Brute force: at least 4 vertices and no cut set of size <= 2."""
    vertices = list(adj)
    if len(vertices) < 4:
        return False
    if not _connected_without(adj, set()):
        return False
    for k in (1, 2):
        for cut in combinations(vertices, k):
            if not _connected_without(adj, set(cut)):
                return False
    return True


@dataclass(frozen=True)
class FourP3CReport:
    exactly_three_literals: bool
    occurrence_bound: bool
    euler_bound: bool
    planar: Optional[bool]          # None: graph too large for the exact check
    three_connected: Optional[bool]  # None: graph too large for brute force
    num_vertices: int
    num_edges: int
    max_occurrence: int

    @property
    def counting_conditions(self) -> bool:
        return self.exactly_three_literals and self.occurrence_bound

    def as_dict(self) -> dict:
        return {
            "exactly_three_literals": self.exactly_three_literals,
            "occurrence_bound": self.occurrence_bound,
            "euler_bound": self.euler_bound,
            "planar": "unchecked" if self.planar is None else self.planar,
            "three_connected":
                "unchecked" if self.three_connected is None else self.three_connected,
            "num_vertices": self.num_vertices,
            "num_edges": self.num_edges,
            "max_occurrence": self.max_occurrence,
        }


def check_4p3c(formula: CnfFormula) -> FourP3CReport:
    graph = build_formula_graph(formula)
    n, m = graph.num_vertices, len(graph.edges)
    occ = formula.occurrences()
    max_occ = max(occ.values(), default=0)
    euler = n < 3 or m <= 2 * n - 4
    planar: Optional[bool] = None
    if n <= EXACT_PLANARITY_LIMIT:
        planar = euler and is_planar_small(graph.clause_nodes + graph.literal_nodes, graph.edges)
    three = is_three_connected(graph.adjacency()) if n <= THREE_CONNECTIVITY_LIMIT else None
    return FourP3CReport(
        exactly_three_literals=all(len(c) == 3 for c in formula.clauses),
        occurrence_bound=max_occ <= 4,
        euler_bound=euler,
        planar=planar,
        three_connected=three,
        num_vertices=n,
        num_edges=m,
        max_occurrence=max_occ,
    )


def _is_acyclic(nodes, edges) -> bool:
    indeg = {v: 0 for v in nodes}
    out: Dict = {v: [] for v in nodes}
    for a, b in edges:
        indeg[b] += 1
        out[a].append(b)
    queue = [v for v, d in indeg.items() if d == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == len(indeg)


@dataclass(frozen=True)
class RequestStructureReport:
    max_degree: int
    degree_bound_ok: bool
    acyclic: bool
    planar_edge_bound: bool

    def as_dict(self) -> dict:
        return {"max_degree": self.max_degree, "degree_bound_ok": self.degree_bound_ok,
                "acyclic": self.acyclic, "planar_edge_bound": self.planar_edge_bound}


def check_request_structure(request: RequestGraph, degree_bound: int = 12) -> RequestStructureReport:
    """Total degree, acyclicity and the |E| <= 3|V| - 6 planar bound."""
    degree = {v: 0 for v in request.nodes}
    for a, b in request.edges:
        degree[a] += 1
        degree[b] += 1
    n, m = len(request.nodes), len(request.edges)
    max_deg = max(degree.values(), default=0)
    return RequestStructureReport(
        max_degree=max_deg,
        degree_bound_ok=max_deg <= degree_bound,
        acyclic=_is_acyclic(request.nodes, request.edges),
        planar_edge_bound=n < 3 or m <= 3 * n - 6,
    )


def is_dag(nodes, edges) -> bool:
    return _is_acyclic(nodes, edges)
