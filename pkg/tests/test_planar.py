import random
from itertools import combinations

import networkx as nx
import pytest

from vnepkit.cnf import CnfFormula
from vnepkit.model import RequestGraph
from vnepkit.reductions.framework import Decomposed, build_request, normalize
from vnepkit.reductions.planar import (
    EXACT_PLANARITY_LIMIT,
    build_formula_graph,
    check_4p3c,
    check_request_structure,
    is_dag,
    is_planar_small,
    is_three_connected,
)
from vnepkit.sattools import random_formula


def _planar(g: nx.Graph) -> bool:
    return is_planar_small(g.nodes, g.edges)


def _adj(g: nx.Graph):
    return {v: set(g[v]) for v in g.nodes}


class TestPlanarity:
    @pytest.mark.parametrize("graph,expected", [
        (nx.complete_graph(5), False),
        (nx.complete_bipartite_graph(3, 3), False),
        (nx.petersen_graph(), False),
        (nx.complete_graph(4), True),
        (nx.cubical_graph(), True),
        (nx.wheel_graph(8), True),
        (nx.complete_bipartite_graph(2, 6), True),
        (nx.path_graph(1), True),
        (nx.empty_graph(0), True),
    ])
    def test_known_graphs(self, graph, expected):
        assert _planar(graph) is expected

    def test_subdivided_k33(self):
        g = nx.complete_bipartite_graph(3, 3)
        for k, (a, b) in enumerate(list(g.edges)[:3]):
            g.remove_edge(a, b)
            nx.add_path(g, [a, f"m{k}", b])
        assert not _planar(g)

    def test_k5_minor_without_k5_subdivision_free_edges(self):
        # K5 with one vertex split into two adjacent halves
        g = nx.complete_graph(4)
        g.add_edges_from([("p", 0), ("p", 1), ("q", 2), ("q", 3), ("p", "q")])
        assert not _planar(g)

    def test_random_graphs_match_networkx(self):
        rng = random.Random(2)
        for _ in range(150):
            n = rng.randint(1, 9)
            g = nx.gnp_random_graph(n, rng.choice((0.3, 0.5, 0.7)), seed=rng.getrandbits(32))
            assert _planar(g) == nx.check_planarity(g)[0], list(g.edges)

    def test_random_bipartite_graphs_match_networkx(self):
        rng = random.Random(3)
        for _ in range(60):
            g = nx.bipartite.random_graph(rng.randint(2, 6), rng.randint(2, 6), 0.5,
                                          seed=rng.getrandbits(32))
            assert _planar(g) == nx.check_planarity(g)[0], list(g.edges)


class TestThreeConnectivity:
    def test_known_graphs(self):
        assert is_three_connected(_adj(nx.complete_graph(4)))
        assert is_three_connected(_adj(nx.cubical_graph()))
        assert not is_three_connected(_adj(nx.cycle_graph(6)))
        assert not is_three_connected(_adj(nx.complete_graph(3)))

    def test_matches_networkx(self):
        rng = random.Random(4)
        for _ in range(100):
            n = rng.randint(4, 10)
            g = nx.gnp_random_graph(n, rng.choice((0.4, 0.6, 0.8)), seed=rng.getrandbits(32))
            assert is_three_connected(_adj(g)) == (nx.node_connectivity(g) >= 3)


class TestFormulaGraph:
    def test_worked(self, worked_formula):
        g = build_formula_graph(worked_formula)
        assert len(g.clause_nodes) == 3 and len(g.literal_nodes) == 4
        assert len(g.edges) == 9 and g.num_vertices == 7

    def test_single_clause(self):
        g = build_formula_graph(CnfFormula(1, ((1,),)))
        assert g.num_vertices == 2 and g.edges == (("C1", "x1"),)

    def test_bipartite(self):
        rng = random.Random(6)
        for _ in range(100):
            f = random_formula(rng.randint(3, 8), rng.randint(1, 8), rng.getrandbits(32))
            g = build_formula_graph(f)
            assert all(c.startswith("C") and x.startswith("x") for c, x in g.edges)
            ng = nx.Graph(list(g.edges))
            assert nx.is_bipartite(ng)


class TestCheck4P3C:
    def test_worked(self, worked_formula):
        report = check_4p3c(worked_formula)
        assert report.exactly_three_literals and report.occurrence_bound
        assert report.euler_bound and report.planar
        assert (report.num_vertices, report.num_edges) == (7, 9)
        # x1 only touches C1 and C2, so removing them isolates it
        assert report.three_connected is False

    def test_five_occurrences(self):
        f = CnfFormula(6, tuple((1, 2 + k % 5, 2 + (k + 1) % 5) for k in range(5)))
        report = check_4p3c(f)
        assert report.max_occurrence == 5 and not report.occurrence_bound

    def test_short_clause(self):
        assert not check_4p3c(CnfFormula(3, ((1, 2, 3), (1, 2)))).exactly_three_literals

    def test_k33_formula(self):
        f = CnfFormula(3, ((1, 2, 3), (1, -2, 3), (-1, 2, -3)))
        report = check_4p3c(f)
        assert (report.num_vertices, report.num_edges) == (6, 9)
        # 9 > 2*6 - 4, so the edge bound alone already rejects it
        assert not report.euler_bound and report.planar is False

    def test_k33_with_pendant_clause_needs_the_exact_check(self):
        f = CnfFormula(3, ((1, 2, 3), (1, -2, 3), (-1, 2, -3), (1,)))
        report = check_4p3c(f)
        assert (report.num_vertices, report.num_edges) == (7, 10)
        assert report.euler_bound and report.planar is False

    def test_large_graph_is_unchecked(self):
        f = random_formula(8, 6, 1)
        report = check_4p3c(f)
        assert report.num_vertices > EXACT_PLANARITY_LIMIT
        assert report.planar is None and report.as_dict()["planar"] == "unchecked"

    def test_matches_networkx_planarity(self):
        rng = random.Random(9)
        for _ in range(40):
            f = random_formula(rng.randint(3, 5), rng.randint(1, 5), rng.getrandbits(32))
            report = check_4p3c(f)
            g = nx.Graph(list(build_formula_graph(f).edges))
            assert report.planar == nx.check_planarity(g)[0]


class TestRequestStructure:
    def test_worked(self, worked_formula):
        r, _ = build_request(worked_formula)
        report = check_request_structure(r)
        assert report.max_degree == 2 and report.degree_bound_ok
        assert report.acyclic and report.planar_edge_bound

    def test_cycle_detected(self):
        r = RequestGraph(("a", "b", "c"), (("a", "b"), ("b", "c"), ("c", "a")))
        assert not check_request_structure(r).acyclic
        assert not is_dag(r.nodes, r.edges)

    def test_dense_request_fails_bounds(self):
        nodes = tuple(f"v{k}" for k in range(14))
        edges = tuple((a, b) for a, b in combinations(nodes, 2))
        report = check_request_structure(RequestGraph(nodes, edges))
        assert report.acyclic and not report.degree_bound_ok and not report.planar_edge_bound

    def test_occurrence_bounded_formulas_have_bounded_degree(self):
        rng = random.Random(10)
        seen = 0
        while seen < 100:
            f = random_formula(rng.randint(6, 12), rng.randint(2, 10), rng.getrandbits(32))
            if not check_4p3c(f).counting_conditions:
                continue
            shape = normalize(f)
            for part in shape.components if isinstance(shape, Decomposed) else (shape,):
                report = check_request_structure(build_request(part.formula)[0])
                assert report.acyclic and report.max_degree <= 12
            seen += 1
