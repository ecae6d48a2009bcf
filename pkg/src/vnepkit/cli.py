"""Command-line interface.

Every command prints a JSON report on stdout. Exit codes: 0 success or
feasible, 1 a definitive negative answer (infeasible, unsatisfiable,
violations, crosscheck disagreement), 2 usage or input error, 3 resource
limit.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional

from .cnf import CnfFormula, parse_dimacs, to_dimacs
from .crosscheck import crosscheck, sample_formulas
from .formats import (
    FormatError,
    dump_json,
    instance_to_dict,
    load_instance,
    load_json,
    load_mapping,
    mapping_to_dict,
)
from .lpformat import emit_ip
from .model import SHORT_NAMES, VariantSpec, VnepError
from .rational import to_rational
from .reductions.diredpwc import (
    DirEdpwcInstance,
    reduce_diredpwc_en,
    reduce_diredpwc_ve,
)
from .reductions.framework import Decomposed, normalize
from .reductions.gadgets import (
    decode_mapping,
    instantiate_gadget,
    registry_from_dict,
    registry_to_dict,
)
from .reductions.planar import check_4p3c
from .sattools import evaluate, sat_oracle
from .solver import SolveLimits, Status, solve_decision, verify_certificate

log = logging.getLogger("vnepkit")

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(doc) -> None:
    json.dump(doc, sys.stdout, indent=2, default=str)
    sys.stdout.write("\n")


def _rational(text: Optional[str], what: str):
    if text is None:
        return None
    try:
        return to_rational(text, allow_inf=False)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"{what}: {exc}") from exc


def _variant(text: str) -> VariantSpec:
    try:
        return VariantSpec.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _factors(args):
    vals = [_rational(getattr(args, k), f"--{k}") for k in ("alpha", "beta", "gamma")]
    if all(v is None for v in vals):
        return None
    return tuple(1 if v is None else v for v in vals)


def _limits(args) -> SolveLimits:
    kw = {}
    if args.max_nodes is not None:
        kw["max_search_nodes"] = args.max_nodes
    if args.max_time is not None:
        kw["max_time"] = args.max_time
    return SolveLimits(**kw)


def _read_cnf(path) -> CnfFormula:
    return parse_dimacs(Path(path).read_text())


def _registry_path(out: Path) -> Path:
    name = out.name[:-5] if out.name.endswith(".json") else out.name
    return out.with_name(name + ".registry.json")


def cmd_generate(args) -> int:
    formula = _read_cnf(args.cnf)
    variant = _variant(args.variant)
    unused = sorted(set(range(1, formula.num_literals + 1)) - set(formula.literals))
    if unused:
        log.warning("literals %s occur in no clause and are dropped", unused)
    shape = normalize(formula)
    if isinstance(shape, Decomposed):
        _emit({
            "error": "formula splits into literal-disjoint components; "
                     "generate one gadget per component (see the normalize command)",
            "components": [{"clause_order": list(c.clause_order),
                            "dimacs": to_dimacs(c.formula)} for c in shape.components],
        })
        return EXIT_INPUT
    g = instantiate_gadget(shape.formula, variant,
                           alpha_eps=_rational(args.alpha_eps, "--alpha-eps"),
                           gamma_eps=_rational(args.gamma_eps, "--gamma-eps"),
                           lam=_rational(args.lam, "--lambda"))
    out = Path(args.out)
    registry = Path(args.registry) if args.registry else _registry_path(out)
    dump_json(instance_to_dict(g.instance), out)
    dump_json(registry_to_dict(g), registry)
    params = registry_to_dict(g)["parameters"]
    _emit({
        "variant": g.instance.variant.name,
        "clause_order": list(shape.clause_order),
        "substrate_nodes": len(g.instance.substrate.nodes),
        "substrate_edges": len(g.instance.substrate.edges),
        "request_nodes": len(g.instance.request.nodes),
        "request_edges": len(g.instance.request.edges),
        "lambda": params.get("lambda"),
        "parameters": params,
        "instance": str(out),
        "registry": str(registry),
    })
    return EXIT_OK


def cmd_solve(args) -> int:
    instance = load_instance(args.instance)
    result = solve_decision(instance, _factors(args), _limits(args))
    doc = {"status": result.status.value, "stats": result.stats.as_dict()}
    if result.mapping is not None:
        mapping = mapping_to_dict(result.mapping)
        if args.out:
            dump_json(mapping, args.out)
            doc["mapping_file"] = args.out
        else:
            doc["mapping"] = mapping
    _emit(doc)
    return {Status.FEASIBLE: EXIT_OK, Status.INFEASIBLE: EXIT_NO,
            Status.RESOURCE_LIMIT: EXIT_LIMIT}[result.status]


def cmd_validate(args) -> int:
    instance = load_instance(args.instance)
    mapping = load_mapping(args.mapping, instance.request)
    report = verify_certificate(instance, mapping, _factors(args))
    _emit({"ok": report.ok, **report.as_dict()})
    return EXIT_OK if report.ok else EXIT_NO


def cmd_emit_ip(args) -> int:
    instance = load_instance(args.instance)
    text = emit_ip(instance)
    if args.out:
        Path(args.out).write_text(text)
        r, s = instance.request, instance.substrate
        _emit({"lp_file": args.out,
               "variables": 1 + len(r.nodes) * len(s.nodes) + len(r.edges) * len(s.edges)})
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_decode(args) -> int:
    instance = load_instance(args.instance)
    g = registry_from_dict(instance, load_json(args.registry))
    mapping = load_mapping(args.mapping, instance.request)
    assignment = decode_mapping(g, mapping)
    v_line = "v " + " ".join(str(k if assignment[k] else -k) for k in sorted(assignment)) + " 0"
    if args.v_line:
        print(v_line)
    else:
        _emit({"assignment": {str(k): v for k, v in sorted(assignment.items())},
               "satisfies": evaluate(g.formula, assignment), "v_line": v_line})
    return EXIT_OK


def cmd_crosscheck(args) -> int:
    variants = [_variant(v) for v in args.variants.split(",") if v.strip()]
    formulas = sample_formulas(args.num_literals, args.num_clauses, args.samples, args.seed)
    report = crosscheck(formulas, variants,
                        alpha_eps=_rational(args.alpha_eps, "--alpha-eps"),
                        gamma_eps=_rational(args.gamma_eps, "--gamma-eps"),
                        limits=_limits(args))
    doc = report.as_dict()
    doc.update(seed=args.seed, num_literals=args.num_literals, num_clauses=args.num_clauses)
    _emit(doc)
    if not report.ok:
        return EXIT_NO
    return EXIT_LIMIT if report.resource_limits else EXIT_OK


def cmd_normalize(args) -> int:
    shape = normalize(_read_cnf(args.cnf))
    parts = shape.components if isinstance(shape, Decomposed) else (shape,)
    _emit({"decomposed": isinstance(shape, Decomposed),
           "components": [{"clause_order": list(p.clause_order), "dimacs": to_dimacs(p.formula)}
                          for p in parts]})
    return EXIT_OK


def cmd_sat(args) -> int:
    formula = _read_cnf(args.cnf)
    res = sat_oracle(formula)
    doc = {"satisfiable": res.satisfiable, "check_4p3c": check_4p3c(formula).as_dict()}
    if res.assignment is not None:
        doc["assignment"] = {str(k): v for k, v in res.assignment.items()}
    _emit(doc)
    return EXIT_OK if res.satisfiable else EXIT_NO


def cmd_reduce_edp(args) -> int:
    doc = load_json(args.input)
    try:
        d = DirEdpwcInstance(doc["nodes"], doc["edges"], doc["commodities"], doc["congestion"])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed path-routing document: {exc}") from exc
    reduce = reduce_diredpwc_en if args.variant == "en" else reduce_diredpwc_ve
    instance = reduce(d)
    dump_json(instance_to_dict(instance), args.out)
    _emit({"variant": instance.variant.name, "instance": args.out,
           "substrate_nodes": len(instance.substrate.nodes),
           "request_edges": len(instance.request.edges)})
    return EXIT_OK


def _add_factors(p) -> None:
    p.add_argument("--alpha", help="node capacity slack factor (rational >= 1)")
    p.add_argument("--beta", help="edge capacity slack factor (rational >= 1)")
    p.add_argument("--gamma", help="latency slack factor (rational >= 1)")


def _add_limits(p) -> None:
    p.add_argument("--max-nodes", type=int, help="search node budget (default 10^7)")
    p.add_argument("--max-time", type=float, help="wall-clock budget in seconds")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vnepkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    variant_help = "variant: " + ", ".join(SHORT_NAMES) + " or a name such as 'VE|-'"

    p = sub.add_parser("generate", help="build the 3-SAT gadget for a DIMACS formula")
    p.add_argument("cnf")
    p.add_argument("--variant", required=True, help=variant_help)
    p.add_argument("--alpha-eps", help="node-capacity hardness slack epsilon (VE|-, V|R)")
    p.add_argument("--gamma-eps", help="latency hardness slack epsilon (-|NL)")
    p.add_argument("--lambda", dest="lam", help="override the capacity step lambda")
    p.add_argument("--out", required=True, help="instance JSON path")
    p.add_argument("--registry", help="registry JSON path (default: next to --out)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="decide an instance and write the embedding")
    p.add_argument("instance")
    _add_factors(p)
    _add_limits(p)
    p.add_argument("--out", help="mapping JSON path (default: inline in the report)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("validate", help="check a mapping against an instance")
    p.add_argument("instance")
    p.add_argument("mapping")
    _add_factors(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("emit-ip", help="write the integer program in CPLEX LP format")
    p.add_argument("instance")
    p.add_argument("--out", help="LP file path (default: stdout)")
    p.set_defaults(func=cmd_emit_ip)

    p = sub.add_parser("decode", help="turn a gadget embedding into a truth assignment")
    p.add_argument("instance")
    p.add_argument("registry")
    p.add_argument("mapping")
    p.add_argument("--v-line", action="store_true", help="print only the DIMACS 'v' line")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("crosscheck", help="compare the SAT oracle with the gadget solver")
    p.add_argument("--num-literals", "-N", type=int, default=5)
    p.add_argument("--num-clauses", "-M", type=int, default=5)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--variants", default=",".join(SHORT_NAMES),
                   help="comma-separated variant names (default: all five)")
    p.add_argument("--alpha-eps")
    p.add_argument("--gamma-eps")
    _add_limits(p)
    p.set_defaults(func=cmd_crosscheck)

    p = sub.add_parser("normalize", help="order clauses or split into components")
    p.add_argument("cnf")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("sat", help="brute-force satisfiability and structure checks")
    p.add_argument("cnf")
    p.set_defaults(func=cmd_sat)

    p = sub.add_parser("reduce-edp", help="reduce a directed path-routing instance")
    p.add_argument("input", help="JSON with nodes, edges, commodities, congestion")
    p.add_argument("--variant", choices=("en", "ve"), required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_reduce_edp)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    level = os.environ.get("VNEPKIT_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, VnepError, ValueError, TypeError, OSError) as exc:
        print(f"vnepkit: {exc}", file=sys.stderr)
        _emit({"error": str(exc)})
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
