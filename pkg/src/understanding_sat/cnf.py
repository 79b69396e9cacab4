"""3SAT problem representation, DIMACS text I/O, and assignment evaluation.

Literals are signed integers in the DIMACS convention: variable ``v``
appears positively as ``v`` and negated as ``-v``.  A clause holds exactly
three pairwise distinct literals; the same variable may occur in both
polarities inside one clause (such a clause is trivially satisfiable but
legal input).
"""

from __future__ import annotations

from dataclasses import dataclass, field


class DimacsError(ValueError):
    """Raised for malformed DIMACS input."""


def negate(literal: int) -> int:
    """Opposite polarity of ``literal``; an involution, never identity."""
    return -literal


def variable_of(literal: int) -> int:
    return abs(literal)


def literal_key(literal: int) -> tuple[int, bool]:
    """Canonical sort key: x1 < -x1 < x2 < -x2 < ..."""
    return (abs(literal), literal < 0)


@dataclass(frozen=True)
class Clause:
    """Three distinct literals, identified by position in the instance."""

    id: int
    literals: tuple[int, int, int]

    def literal_set(self) -> frozenset[int]:
        return frozenset(self.literals)


@dataclass(eq=False)
class Instance:
    """A 3SAT instance: clause list over variables 1..variable_count.

    ``dedup_count`` records how many duplicate clauses (same literal set)
    were dropped while building the instance.  Equality compares the
    variable count plus the clause sequence by literal *set*, so the order
    literals are written inside a clause does not affect identity.
    """

    variable_count: int
    clauses: list[Clause] = field(default_factory=list)
    dedup_count: int = 0

    def literal_profile(self) -> tuple[frozenset[int], ...]:
        return tuple(c.literal_set() for c in self.clauses)

    def __eq__(self, other: object):
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.variable_count == other.variable_count
            and self.literal_profile() == other.literal_profile()
        )

    def __hash__(self) -> int:
        return hash((self.variable_count, self.literal_profile()))

    def __repr__(self) -> str:
        return (
            f"Instance(n={self.variable_count}, m={len(self.clauses)},"
            f" dedup={self.dedup_count})"
        )


def _check_clause(literals: tuple[int, ...], variable_count: int) -> None:
    if len(literals) != 3 or len(set(literals)) != 3:
        raise ValueError(f"clause needs exactly 3 distinct literals: {literals}")
    for lit in literals:
        if lit == 0 or abs(lit) > variable_count:
            raise ValueError(f"literal {lit} out of range for n={variable_count}")


def build_instance(variable_count: int, clause_literals) -> Instance:
    """Assemble an instance from literal tuples, dropping duplicate clauses.

    Duplicates are clauses with an identical literal set; the first
    occurrence wins and keeps its literal order.  Clause ids are dense and
    follow input order.
    """
    if variable_count < 0:
        raise ValueError("variable count must be non-negative")
    clauses: list[Clause] = []
    seen: set[frozenset[int]] = set()
    dropped = 0
    for lits in clause_literals:
        lits = tuple(lits)
        _check_clause(lits, variable_count)
        key = frozenset(lits)
        if key in seen:
            dropped += 1
            continue
        seen.add(key)
        clauses.append(Clause(id=len(clauses), literals=lits))
    return Instance(variable_count=variable_count, clauses=clauses, dedup_count=dropped)


def parse_dimacs(text: str) -> Instance:
    """Parse DIMACS CNF text into an Instance.

    Comment lines start with ``c``.  The header ``p cnf <n> <m>`` must
    appear before any clause line.  Each clause line is whitespace
    separated nonzero integers terminated by ``0``; duplicate literals in
    a clause collapse, and after collapsing exactly three distinct
    literals must remain.  Duplicate clauses are dropped (counted in
    ``dedup_count``).
    """
    variable_count = None
    raw_clauses: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if variable_count is not None:
                raise DimacsError(f"line {lineno}: duplicate header")
            parts = line.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                variable_count, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed header {line!r}") from None
            if variable_count < 0 or declared < 0:
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            continue
        if variable_count is None:
            raise DimacsError(f"line {lineno}: clause before header")
        try:
            tokens = [int(tok) for tok in line.split()]
        except ValueError:
            raise DimacsError(f"line {lineno}: non-integer token") from None
        if not tokens or tokens[-1] != 0:
            raise DimacsError(f"line {lineno}: clause line must end with 0")
        if 0 in tokens[:-1]:
            raise DimacsError(f"line {lineno}: stray 0 inside clause line")
        lits: list[int] = []
        for lit in tokens[:-1]:
            if abs(lit) > variable_count:
                raise DimacsError(
                    f"line {lineno}: variable {abs(lit)} exceeds declared {variable_count}"
                )
            if lit not in lits:
                lits.append(lit)
        if len(lits) == 0:
            raise DimacsError(f"line {lineno}: empty clause")
        if len(lits) != 3:
            raise DimacsError(
                f"line {lineno}: clause has {len(lits)} distinct literals, need 3"
            )
        raw_clauses.append(tuple(lits))
    if variable_count is None:
        raise DimacsError("missing header")
    return build_instance(variable_count, raw_clauses)


def emit_dimacs(inst: Instance) -> str:
    """Render an instance as DIMACS text, one clause per line, no trailing
    whitespace.  Parsing the result reproduces the instance."""
    lines = [f"p cnf {inst.variable_count} {len(inst.clauses)}"]
    for clause in inst.clauses:
        lines.append(" ".join(str(lit) for lit in clause.literals) + " 0")
    return "\n".join(lines) + "\n"


@dataclass
class Assignment:
    """Partial or total truth assignment; unmentioned variables take
    ``default_free`` when evaluated."""

    values: dict[int, int] = field(default_factory=dict)
    default_free: int = 0

    def literal_true(self, literal: int) -> bool:
        bit = self.values.get(abs(literal), self.default_free)
        return bit == 1 if literal > 0 else bit == 0

    def as_signed_literals(self, variable_count: int) -> list[int]:
        out = []
        for var in range(1, variable_count + 1):
            bit = self.values.get(var, self.default_free)
            out.append(var if bit == 1 else -var)
        return out


def evaluate(inst: Instance, assignment: Assignment) -> list[int]:
    """Ids of clauses the assignment falsifies; empty means satisfied."""
    for var, bit in assignment.values.items():
        if var < 1 or var > inst.variable_count:
            raise ValueError(f"assignment references unknown variable {var}")
        if bit not in (0, 1):
            raise ValueError(f"assignment value for {var} must be 0 or 1")
    falsified = []
    for clause in inst.clauses:
        if not any(assignment.literal_true(lit) for lit in clause.literals):
            falsified.append(clause.id)
    return falsified
