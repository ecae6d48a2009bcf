"""Oracle-equivalence harness: brute-force SAT versus solving the gadgets.

Formulas that split into literal-disjoint parts are handled per part; the
formula counts as embeddable iff every part's gadget is.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .cnf import CnfFormula
from .model import GADGET_VARIANTS, NL, VE, VR, VariantSpec
from .reductions.framework import Decomposed, normalize
from .reductions.gadgets import decode_mapping, instantiate_gadget
from .sattools import Assignment, evaluate, random_formula, sat_oracle
from .solver import SolveLimits, Status, solve_decision


@dataclass
class FormulaOutcome:
    status: Status
    assignment: Optional[Assignment] = None
    components: int = 1
    search_nodes: int = 0


def components(formula: CnfFormula) -> List[CnfFormula]:
    result = normalize(formula)
    parts = result.components if isinstance(result, Decomposed) else (result,)
    return [p.formula for p in parts]


def solve_formula(formula: CnfFormula, variant: VariantSpec, *, alpha_eps=None, gamma_eps=None,
                  limits: Optional[SolveLimits] = None) -> FormulaOutcome:
    """Solve the gadget of every component and decode a combined assignment.

    The decoded assignment is checked against the formula; a mismatch is a
    bug in the reduction and raises AssertionError.
    """
    parts = components(formula)
    combined: Assignment = {}
    explored = 0
    limited = False
    for part in parts:
        g = instantiate_gadget(part, variant, alpha_eps=alpha_eps, gamma_eps=gamma_eps)
        res = solve_decision(g.instance, g.solve_factors(), limits)
        explored += res.stats.nodes_explored
        if res.status is Status.INFEASIBLE:
            return FormulaOutcome(Status.INFEASIBLE, None, len(parts), explored)
        if res.status is Status.RESOURCE_LIMIT:
            limited = True
            continue
        decoded = decode_mapping(g, res.mapping)
        for k in part.literals:
            combined[k] = decoded[k]
    if limited:
        return FormulaOutcome(Status.RESOURCE_LIMIT, None, len(parts), explored)
    for k in range(1, formula.num_literals + 1):
        combined.setdefault(k, False)
    if not evaluate(formula, combined):
        raise AssertionError(f"decoded assignment {combined} does not satisfy {formula}")
    return FormulaOutcome(Status.FEASIBLE, combined, len(parts), explored)


def sample_formulas(num_literals: int, num_clauses: int, samples: int, seed) -> List[CnfFormula]:
    rng = random.Random(seed)
    return [random_formula(num_literals, num_clauses, rng.getrandbits(64)) for _ in range(samples)]


@dataclass
class CrosscheckReport:
    variants: List[str]
    rows: List[dict] = field(default_factory=list)
    disagreements: List[dict] = field(default_factory=list)
    resource_limits: int = 0

    @property
    def matrix(self) -> Dict[str, Dict[str, int]]:
        out = {v: {"agree": 0, "disagree": 0, "resource_limit": 0} for v in self.variants}
        for row in self.rows:
            for v, ans in row["answers"].items():
                if ans == Status.RESOURCE_LIMIT.value:
                    out[v]["resource_limit"] += 1
                elif (ans == Status.FEASIBLE.value) == row["satisfiable"]:
                    out[v]["agree"] += 1
                else:
                    out[v]["disagree"] += 1
        return out

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def as_dict(self) -> dict:
        return {
            "formulas": len(self.rows),
            "variants": self.variants,
            "matrix": self.matrix,
            "disagreements": self.disagreements,
            "resource_limits": self.resource_limits,
        }


def crosscheck(formulas: Sequence[CnfFormula], variants: Sequence[VariantSpec] = GADGET_VARIANTS,
               *, alpha_eps=None, gamma_eps=None,
               limits: Optional[SolveLimits] = None) -> CrosscheckReport:
    """Compare the SAT oracle with every variant's gadget on every formula.

    ``alpha_eps`` is applied to the variants that accept it (VE|- and V|R),
    ``gamma_eps`` to -|NL; other variants get the plain gadget.
    """
    report = CrosscheckReport([v.name for v in variants])
    for idx, formula in enumerate(formulas):
        sat = sat_oracle(formula).satisfiable
        answers = {}
        for v in variants:
            a_eps = alpha_eps if v in (VE, VR) else None
            g_eps = gamma_eps if v == NL else None
            outcome = solve_formula(formula, v, alpha_eps=a_eps, gamma_eps=g_eps, limits=limits)
            answers[v.name] = outcome.status.value
            if outcome.status is Status.RESOURCE_LIMIT:
                report.resource_limits += 1
            elif (outcome.status is Status.FEASIBLE) != sat:
                report.disagreements.append({
                    "index": idx, "variant": v.name, "satisfiable": sat,
                    "answer": outcome.status.value,
                    "formula": {"num_literals": formula.num_literals,
                                "clauses": [list(c) for c in formula.clauses]},
                })
        report.rows.append({"index": idx, "satisfiable": sat, "answers": answers})
    return report
