"""Brute-force SAT oracle and assignment helpers.

The oracle is a plain truth table. It is deliberately independent from the
embedding machinery so it can referee the reductions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, Iterator, Optional

from .cnf import CnfFormula

Assignment = Dict[int, bool]

MAX_ORACLE_LITERALS = 26


@dataclass(frozen=True)
class SatResult:
    satisfiable: bool
    assignment: Optional[Assignment] = None


def evaluate(formula: CnfFormula, assignment: Assignment) -> bool:
    """True iff every clause has a signed literal that ``assignment`` makes true."""
    missing = [k for k in formula.literals if k not in assignment]
    if missing:
        raise ValueError(f"assignment is partial, missing literals {missing}")
    return all(any(assignment[abs(x)] == (x > 0) for x in c) for c in formula.clauses)


def assignments(literals, *, reverse: bool = False) -> Iterator[Assignment]:
    """All assignments over ``literals`` in binary counting order (first literal
    most significant, F before T)."""
    literals = list(literals)
    n = len(literals)
    codes = range(2**n - 1, -1, -1) if reverse else range(2**n)
    for code in codes:
        yield {k: bool(code >> (n - 1 - pos) & 1) for pos, k in enumerate(literals)}


def sat_oracle(formula: CnfFormula) -> SatResult:
    """First satisfying assignment in counting order, or unsatisfiable."""
    literals = formula.literals
    if len(literals) > MAX_ORACLE_LITERALS:
        raise ValueError(f"{len(literals)} literals exceed the oracle cap of {MAX_ORACLE_LITERALS}")
    for a in assignments(literals):
        if evaluate(formula, a):
            return SatResult(True, a)
    return SatResult(False)


def random_formula(num_literals: int, num_clauses: int, seed) -> CnfFormula:
    """``num_clauses`` random clauses of 3 distinct literals with uniform signs."""
    if num_literals < 3:
        raise ValueError("need at least 3 literals for 3-literal clauses")
    rng = random.Random(seed)
    clauses = []
    for _ in range(num_clauses):
        lits = rng.sample(range(1, num_literals + 1), 3)
        clauses.append(tuple(x if rng.random() < 0.5 else -x for x in lits))
    return CnfFormula(num_literals, tuple(clauses))
