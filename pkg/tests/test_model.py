import math
from fractions import Fraction

import pytest

from vnepkit.model import (
    EN,
    GADGET_VARIANTS,
    NL,
    NR,
    UNRESTRICTED,
    VE,
    VR,
    InstanceError,
    Mapping,
    RequestGraph,
    SubstrateGraph,
    VariantSpec,
    VnepInstance,
)
from vnepkit.rational import INF, format_rational, is_inf, scale, to_rational


class TestRational:
    def test_parse_forms(self):
        assert to_rational(3) == 3
        assert to_rational("1/10") == Fraction(1, 10)
        assert to_rational("0.25") == Fraction(1, 4)
        assert to_rational(Fraction(2, 3)) == Fraction(2, 3)
        assert is_inf(to_rational("inf"))
        assert is_inf(to_rational(math.inf))

    def test_rejects_inexact(self):
        with pytest.raises(TypeError):
            to_rational(0.1)
        with pytest.raises(TypeError):
            to_rational(True)
        with pytest.raises(ValueError):
            to_rational("inf", allow_inf=False)
        with pytest.raises(ValueError):
            to_rational("abc")

    def test_format(self):
        assert format_rational(Fraction(4, 2)) == 2
        assert format_rational(Fraction(1, 6)) == "1/6"
        assert format_rational(INF) == "inf"

    def test_inf_absorbs(self):
        assert scale(Fraction(3, 2), INF) == INF
        assert Fraction(10**9) < INF
        assert scale(Fraction(3, 2), Fraction(2)) == 3

    def test_gadget_inequality_is_exact(self):
        eps = Fraction(1, 10)
        assert (1 + eps / 2) * (2 - eps) < 2


class TestGraphs:
    def test_defaults(self):
        s = SubstrateGraph(("a", "b"), (("a", "b"),))
        assert is_inf(s.node_capacity["a"]) and is_inf(s.edge_capacity[("a", "b")])
        assert s.edge_latency[("a", "b")] == 0
        assert s.out_edges["a"] == (("a", "b"),)
        assert s.in_edges["b"] == (("a", "b"),)

    @pytest.mark.parametrize("nodes,edges", [
        (("a",), (("a", "a"),)),
        (("a", "b"), (("a", "b"), ("a", "b"))),
        (("a",), (("a", "z"),)),
        (("a", "a"), ()),
    ])
    def test_simple_digraph_enforced(self, nodes, edges):
        with pytest.raises(InstanceError):
            SubstrateGraph(nodes, edges)

    def test_negative_values_rejected(self):
        with pytest.raises(InstanceError):
            SubstrateGraph(("a",), (), node_capacity={"a": -1})
        with pytest.raises((InstanceError, ValueError)):
            SubstrateGraph(("a", "b"), (("a", "b"),), edge_latency={("a", "b"): "inf"})
        with pytest.raises(InstanceError):
            RequestGraph(("i",), (), node_demand={"i": -1})

    def test_request_defaults(self):
        r = RequestGraph(("i", "j"), (("i", "j"),))
        assert r.node_demand["i"] == 0
        assert is_inf(r.edge_latency_bound[("i", "j")])
        assert r.forbidden_nodes["i"] == frozenset()
        assert r.forbidden_edges[("i", "j")] == frozenset()


class TestVariants:
    def test_names(self):
        assert [v.name for v in GADGET_VARIANTS] == ["VE|-", "E|N", "V|R", "-|NR", "-|NL"]
        assert UNRESTRICTED.name == "-|-"

    @pytest.mark.parametrize("text,expected", [
        ("ve", VE), ("EN", EN), ("vr", VR), ("nr", NR), ("nl", NL),
        ("VE|-", VE), ("VE−", VE), ("-|NL", NL), ("−|NR", NR), ("E|N", EN), ("-|-", UNRESTRICTED),
        ("VE|NRL", VariantSpec(True, True, True, True, True)),
    ])
    def test_parse(self, text, expected):
        assert VariantSpec.parse(text) == expected

    @pytest.mark.parametrize("text", ["xx", "V|X", "", "EV|"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            VariantSpec.parse(text)

    def test_subset(self):
        assert UNRESTRICTED.enforces_subset_of(VE)
        assert VariantSpec(node_placement=True).enforces_subset_of(NL)
        assert not VE.enforces_subset_of(EN)

    def test_all_combinations_representable(self):
        from itertools import product
        specs = {VariantSpec(*flags) for flags in product((False, True), repeat=5)}
        assert len(specs) == 32
        assert all(VariantSpec.parse(v.name) == v for v in specs)


class TestInstance:
    def _graphs(self):
        s = SubstrateGraph(("a", "b"), (("a", "b"),), node_capacity={"a": 1, "b": 1},
                           edge_capacity={("a", "b"): 1}, edge_latency={("a", "b"): 1})
        r = RequestGraph(("i", "j"), (("i", "j"),), node_demand={"i": 1, "j": 1},
                         edge_demand={("i", "j"): 1}, edge_latency_bound={("i", "j"): 2},
                         forbidden_nodes={"i": {"b"}}, forbidden_edges={("i", "j"): {("a", "b")}})
        return s, r

    def test_normalized_neutralizes(self):
        s, r = self._graphs()
        inst = VnepInstance.normalized(s, r, UNRESTRICTED)
        assert is_inf(inst.substrate.node_capacity["a"])
        assert is_inf(inst.substrate.edge_capacity[("a", "b")])
        assert is_inf(inst.request.edge_latency_bound[("i", "j")])
        assert inst.request.forbidden_nodes["i"] == frozenset()
        assert inst.request.forbidden_edges[("i", "j")] == frozenset()

    def test_unnormalized_rejected(self):
        s, r = self._graphs()
        with pytest.raises(InstanceError):
            VnepInstance(s, r, UNRESTRICTED)

    def test_forbidden_reference_checked(self):
        s, _ = self._graphs()
        r = RequestGraph(("i",), (), forbidden_nodes={"i": {"zz"}})
        with pytest.raises(InstanceError):
            VnepInstance.normalized(s, r, VariantSpec(node_placement=True))

    def test_full_variant_keeps_everything(self):
        s, r = self._graphs()
        inst = VnepInstance.normalized(s, r, VariantSpec(True, True, True, True, True))
        assert inst.substrate.node_capacity["a"] == 1
        assert inst.request.forbidden_nodes["i"] == {"b"}

    def test_instances_are_immutable(self):
        s, r = self._graphs()
        inst = VnepInstance.normalized(s, r, VE)
        with pytest.raises(Exception):
            inst.variant = EN


def test_mapping_normalizes_paths():
    m = Mapping({"i": "a"}, {("i", "j"): [["a", "b"]]})
    assert m.edge_map[("i", "j")] == (("a", "b"),)
