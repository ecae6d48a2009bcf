"""CPLEX-LP text emitter for the decision integer program.

Variables: ``x`` (request embedded), ``y_<i>__<u>`` (node i on u) and
``z_<i>_<j>__<u>_<v>`` (substrate edge (u, v) on the path of (i, j)). Ids
are percent-encoded so that only letters and digits survive verbatim.

Coefficients stay exact: a row is written in decimal when every number in
it has a terminating expansion, otherwise the row is multiplied through by
the lcm of its denominators and written with integers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .model import Edge, NodeId, VnepInstance
from .rational import is_inf
from .validation import allowed_edges, allowed_nodes

Term = Tuple[Fraction, str]


def encode_id(name: str) -> str:
    return "".join(
        ch if ch.isascii() and ch.isalnum() else "".join(f"%{b:02X}" for b in ch.encode("utf-8"))
        for ch in name)


def y_var(i: NodeId, u: NodeId) -> str:
    return f"y_{encode_id(i)}__{encode_id(u)}"


def z_var(ij: Edge, uv: Edge) -> str:
    return f"z_{encode_id(ij[0])}_{encode_id(ij[1])}__{encode_id(uv[0])}_{encode_id(uv[1])}"


def _terminates(q: Fraction) -> bool:
    d = q.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    return d == 1


def _decimal(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    d, twos, fives = q.denominator, 0, 0
    while d % 2 == 0:
        d, twos = d // 2, twos + 1
    while d % 5 == 0:
        d, fives = d // 5, fives + 1
    digits = max(twos, fives)
    scaled = abs(q) * 10**digits
    text = str(scaled.numerator).rjust(digits + 1, "0")
    out = f"{text[:-digits]}.{text[-digits:]}".rstrip("0").rstrip(".")
    return ("-" if q < 0 else "") + out


def _row(name: str, terms: Sequence[Term], sense: str, rhs: Fraction) -> str:
    values = [c for c, _ in terms] + [rhs]
    if not all(_terminates(v) for v in values):
        lcm = math.lcm(*(v.denominator for v in values))
        terms = [(c * lcm, v) for c, v in terms]
        rhs = rhs * lcm
    parts = []
    for k, (coef, var) in enumerate(terms):
        sign = "-" if coef < 0 else "+"
        mag = abs(coef)
        body = var if mag == 1 else f"{_decimal(mag)} {var}"
        if k == 0:
            parts.append(body if sign == "+" else f"- {body}")
        else:
            parts.append(f"{sign} {body}")
    return f" {name}: {' '.join(parts)} {sense} {_decimal(rhs)}"


def _emit_rows(lines: List[str], rows: Iterable[Tuple[str, List[Term], str, Fraction]]) -> int:
    count = 0
    for name, terms, sense, rhs in rows:
        terms = [(c, v) for c, v in terms if c != 0]
        if not terms:
            continue
        lines.append(_row(name, terms, sense, rhs))
        count += 1
    return count


def emit_ip(instance: VnepInstance) -> str:
    """Render the decision IP (maximize x) for ``instance`` as LP text.

    Capacity rows are only written for enforced families with finite
    capacity, latency rows only when latencies are enforced and the bound is
    finite. Rows whose left-hand side would be empty are dropped.
    """
    s, r, var = instance.substrate, instance.request, instance.variant
    one = Fraction(1)
    lines = ["\\ VNEP decision model", "Maximize", " obj: x", "Subject To"]

    lines.append("\\ each request node is placed exactly once iff the request is embedded")
    _emit_rows(lines, (
        (f"place_{encode_id(i)}", [(one, y_var(i, u)) for u in s.nodes] + [(-one, "x")],
         "=", Fraction(0))
        for i in r.nodes))

    lines.append("\\ unsuitable hosts")
    _emit_rows(lines, (
        (f"forbid_node_{encode_id(i)}",
         [(one, y_var(i, u)) for u in s.nodes if u not in allowed],
         "=", Fraction(0))
        for i in r.nodes for allowed in [allowed_nodes(instance, i)]))

    lines.append("\\ unit flow from the host of i to the host of j")
    _emit_rows(lines, (
        (f"flow_{encode_id(ij[0])}_{encode_id(ij[1])}__{encode_id(u)}",
         [(one, z_var(ij, e)) for e in s.out_edges[u]]
         + [(-one, z_var(ij, e)) for e in s.in_edges[u]]
         + [(-one, y_var(ij[0], u)), (one, y_var(ij[1], u))],
         "=", Fraction(0))
        for ij in r.edges for u in s.nodes))

    lines.append("\\ unsuitable substrate edges")
    _emit_rows(lines, (
        (f"forbid_edge_{encode_id(ij[0])}_{encode_id(ij[1])}",
         [(one, z_var(ij, e)) for e in s.edges if e not in allowed],
         "=", Fraction(0))
        for ij in r.edges for allowed in [allowed_edges(instance, ij)]))

    if var.node_capacities:
        lines.append("\\ node capacities")
        _emit_rows(lines, (
            (f"cap_node_{encode_id(u)}",
             [(r.node_demand[i], y_var(i, u)) for i in r.nodes],
             "<=", s.node_capacity[u])
            for u in s.nodes if not is_inf(s.node_capacity[u])))

    if var.edge_capacities:
        lines.append("\\ edge capacities")
        _emit_rows(lines, (
            (f"cap_edge_{encode_id(e[0])}_{encode_id(e[1])}",
             [(r.edge_demand[ij], z_var(ij, e)) for ij in r.edges],
             "<=", s.edge_capacity[e])
            for e in s.edges if not is_inf(s.edge_capacity[e])))

    if var.latency:
        lines.append("\\ (*) latency bounds, only present when latencies are enforced")
        _emit_rows(lines, (
            (f"latency_{encode_id(ij[0])}_{encode_id(ij[1])}",
             [(s.edge_latency[e], z_var(ij, e)) for e in s.edges],
             "<=", r.edge_latency_bound[ij])
            for ij in r.edges if not is_inf(r.edge_latency_bound[ij])))

    lines.append("Binary")
    lines.append(" x")
    lines.extend(f" {y_var(i, u)}" for i in r.nodes for u in s.nodes)
    lines.extend(f" {z_var(ij, e)}" for ij in r.edges for e in s.edges)
    lines.append("End")
    return "\n".join(lines) + "\n"
