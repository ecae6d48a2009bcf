"""CNF formulas with 1-3 literals per clause, plus DIMACS reading and writing.

Following the reduction's vocabulary, a *literal* is a variable index in
``1..num_literals``; a *signed literal* is ``+k`` or ``-k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Tuple

from .model import VnepError

Clause = Tuple[int, ...]


class DimacsError(VnepError, ValueError):
    """Malformed DIMACS text."""


class ClauseTooLongError(DimacsError):
    """A clause has more than three distinct literals."""


class TautologyError(DimacsError):
    """A clause contains a literal together with its negation."""


class EmptyClauseError(DimacsError):
    """A clause without literals (trivially unsatisfiable, outside the reduction)."""


def make_clause(signed: Iterable[int]) -> Clause:
    """Deduplicate and sort a clause by literal index; reject bad shapes."""
    lits = set()
    for x in signed:
        if not isinstance(x, int) or isinstance(x, bool) or x == 0:
            raise DimacsError(f"invalid signed literal {x!r}")
        lits.add(x)
    if not lits:
        raise EmptyClauseError("empty clause")
    if any(-x in lits for x in lits):
        raise TautologyError(f"tautological clause {sorted(lits, key=abs)}")
    if len(lits) > 3:
        raise ClauseTooLongError(f"clause {sorted(lits, key=abs)} has more than 3 literals")
    return tuple(sorted(lits, key=abs))


@dataclass(frozen=True)
class CnfFormula:
    num_literals: int
    clauses: Tuple[Clause, ...]

    def __post_init__(self):
        clauses = tuple(make_clause(c) for c in self.clauses)
        for c in clauses:
            for x in c:
                if abs(x) > self.num_literals:
                    raise DimacsError(f"literal {x} outside 1..{self.num_literals}")
        object.__setattr__(self, "clauses", clauses)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def clause_literals(self, i: int) -> Tuple[int, ...]:
        """Sorted literal indices of clause ``i`` (1-based)."""
        return tuple(abs(x) for x in self.clauses[i - 1])

    @property
    def literals(self) -> Tuple[int, ...]:
        """Literal indices that occur in some clause, ascending."""
        return tuple(sorted({abs(x) for c in self.clauses for x in c}))

    def occurrences(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for c in self.clauses:
            for x in c:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
        return counts

    def literal_sets(self) -> Tuple[FrozenSet[int], ...]:
        return tuple(frozenset(abs(x) for x in c) for c in self.clauses)

    def reordered(self, order: Iterable[int]) -> "CnfFormula":
        """Formula with clauses permuted; ``order`` lists 1-based indices."""
        return CnfFormula(self.num_literals, tuple(self.clauses[i - 1] for i in order))

    def __str__(self):
        def lit(x):
            return f"x{x}" if x > 0 else f"~x{-x}"
        return " & ".join("(" + " | ".join(lit(x) for x in c) + ")" for c in self.clauses) or "T"


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF, keeping clause order.

    Duplicate literals inside a clause are merged. Clauses with more than
    three distinct literals, tautologies and empty clauses raise distinct
    DimacsError subclasses.
    """
    num_vars = None
    declared_clauses = None
    clauses = []
    current: list = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if num_vars is not None or len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: bad problem line {line!r}")
            try:
                num_vars, declared_clauses = int(parts[2]), int(parts[3])
            except ValueError as exc:
                raise DimacsError(f"line {lineno}: bad problem line {line!r}") from exc
            if num_vars < 0 or declared_clauses < 0:
                raise DimacsError(f"line {lineno}: negative counts")
            continue
        if num_vars is None:
            raise DimacsError(f"line {lineno}: clause before problem line")
        for tok in line.split():
            try:
                x = int(tok)
            except ValueError as exc:
                raise DimacsError(f"line {lineno}: bad token {tok!r}") from exc
            if x == 0:
                clauses.append(make_clause(current))
                current = []
            else:
                if abs(x) > num_vars:
                    raise DimacsError(f"line {lineno}: literal {x} exceeds declared {num_vars}")
                current.append(x)
    if num_vars is None:
        raise DimacsError("missing 'p cnf' problem line")
    if current:
        raise DimacsError("last clause is not terminated by 0")
    if declared_clauses != len(clauses):
        raise DimacsError(f"header declares {declared_clauses} clauses, found {len(clauses)}")
    return CnfFormula(num_vars, tuple(clauses))


def to_dimacs(formula: CnfFormula) -> str:
    lines = [f"p cnf {formula.num_literals} {formula.num_clauses}"]
    lines.extend(" ".join(map(str, c)) + " 0" for c in formula.clauses)
    return "\n".join(lines) + "\n"
