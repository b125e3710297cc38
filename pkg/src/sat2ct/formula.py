"""CNF data model: literals, clauses, formulas, DIMACS I/O, and the
brute-force satisfiability oracle.

Conventions fixed here and relied on everywhere else:

* literals carry a 1-based variable index; the canonical integer encoding
  ``enc = 2*var + negated`` is the total order used for all tie-breaking;
* clauses are duplicate-free literal sets of size 1..3 with no
  complementary pair, stored sorted by ``enc``;
* formulas hold deduplicated clauses in canonical order
  (size first, then the encoded-literal tuple);
* assignment index bit ``i`` holds the value of variable ``i + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ClauseTooWide,
    DimensionMismatch,
    EmptyClause,
    MalformedHeader,
    TooManyVariables,
    VariableOutOfRange,
)

BRUTE_FORCE_CAP = 24


@dataclass(frozen=True, order=True)
class Literal:
    var: int
    negated: bool = False

    def __post_init__(self) -> None:
        if self.var < 1:
            raise VariableOutOfRange(f"variable index must be >= 1, got {self.var}")

    @property
    def enc(self) -> int:
        """Canonical integer encoding: 2*var + (1 if negated)."""
        return 2 * self.var + (1 if self.negated else 0)

    @classmethod
    def from_enc(cls, enc: int) -> "Literal":
        return cls(enc >> 1, bool(enc & 1))

    @classmethod
    def from_dimacs(cls, lit: int) -> "Literal":
        if lit == 0:
            raise ValueError("0 is the DIMACS clause terminator, not a literal")
        return cls(abs(lit), lit < 0)

    def to_dimacs(self) -> int:
        return -self.var if self.negated else self.var

    def complement(self) -> "Literal":
        return Literal(self.var, not self.negated)

    def value(self, assignment: Sequence[int]) -> bool:
        bit = bool(assignment[self.var - 1])
        return (not bit) if self.negated else bit

    def __str__(self) -> str:
        return f"-x{self.var}" if self.negated else f"x{self.var}"


@dataclass(frozen=True)
class Clause:
    """A disjunction of 1..3 literals, stored sorted by encoding."""

    literals: tuple[Literal, ...]

    def __post_init__(self) -> None:
        lits = tuple(sorted(self.literals, key=lambda l: l.enc))
        if not 1 <= len(lits) <= 3:
            raise ClauseTooWide(f"clause width must be 1..3, got {len(lits)}")
        encs = [l.enc for l in lits]
        if len(set(encs)) != len(encs):
            raise ValueError(f"duplicate literal in clause {lits}")
        vars_ = [l.var for l in lits]
        if len(set(vars_)) != len(vars_):
            raise ValueError(f"complementary pair makes clause {lits} tautological")
        object.__setattr__(self, "literals", lits)

    @classmethod
    def from_ints(cls, lits: Iterable[int]) -> "Clause":
        return cls(tuple(Literal.from_dimacs(v) for v in lits))

    @property
    def encs(self) -> tuple[int, ...]:
        return tuple(l.enc for l in self.literals)

    @property
    def enc_set(self) -> frozenset[int]:
        return frozenset(l.enc for l in self.literals)

    def __len__(self) -> int:
        return len(self.literals)

    def subsumes(self, other: "Clause") -> bool:
        """True iff self is a subset of other (satisfying self satisfies other)."""
        return all(l in other.literals for l in self.literals)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.literals), self.encs)

    def __str__(self) -> str:
        return "(" + " | ".join(str(l) for l in self.literals) + ")"


@dataclass(frozen=True)
class Formula:
    """A conjunction of deduplicated clauses over variables 1..n.

    The constructor canonicalizes: clauses are sorted by (size, encoding)
    and duplicates are merged silently. Callers that need to report merge
    counts (the DIMACS parser) compare sizes themselves.
    """

    n: int
    clauses: tuple[Clause, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise VariableOutOfRange(f"variable count must be >= 0, got {self.n}")
        for c in self.clauses:
            for l in c.literals:
                if l.var > self.n:
                    raise VariableOutOfRange(
                        f"literal {l} exceeds variable count n={self.n}"
                    )
        unique = sorted(set(self.clauses), key=Clause.sort_key)
        object.__setattr__(self, "clauses", tuple(unique))

    @classmethod
    def from_ints(cls, n: int, clause_lists: Iterable[Iterable[int]]) -> "Formula":
        return cls(n, tuple(Clause.from_ints(c) for c in clause_lists))

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def m1(self) -> int:
        return sum(1 for c in self.clauses if len(c) == 1)

    @property
    def m2(self) -> int:
        return sum(1 for c in self.clauses if len(c) == 2)

    @property
    def m3(self) -> int:
        return sum(1 for c in self.clauses if len(c) == 3)

    @property
    def clause_set(self) -> frozenset[Clause]:
        return frozenset(self.clauses)

    def __str__(self) -> str:
        return " & ".join(str(c) for c in self.clauses) if self.clauses else "TRUE"


# type alias for readability; an assignment is a bit/bool vector of length n
Assignment = Sequence[int]


def length(formula: Formula) -> int:
    """Number of binary AND/OR connectives: sum of clause widths minus one.

    By convention the empty formula has length 0.
    """
    if formula.m == 0:
        return 0
    return sum(len(c) for c in formula.clauses) - 1


def reduce(formula: Formula) -> Formula:
    """Remove every clause that is a superset of another clause.

    Logically equivalent to the input and idempotent. Only strictly
    smaller clauses can subsume (duplicates were merged at construction),
    so a single size-ordered sweep suffices.
    """
    kept: list[Clause] = []
    for c in sorted(formula.clauses, key=Clause.sort_key):
        cset = c.enc_set
        if not any(k.enc_set <= cset for k in kept):
            kept.append(c)
    return Formula(formula.n, tuple(kept))


def evaluate(formula: Formula, assignment: Assignment) -> bool:
    """True iff every clause has at least one true literal (empty AND is true)."""
    if len(assignment) != formula.n:
        raise DimensionMismatch(
            f"assignment length {len(assignment)} != n={formula.n}"
        )
    return all(any(l.value(assignment) for l in c.literals) for c in formula.clauses)


def satisfying_mask(formula: Formula, cap: int = BRUTE_FORCE_CAP) -> np.ndarray:
    """Boolean array of length 2**n with the formula value at every
    assignment; bit k of the array index holds variable k+1."""
    if formula.n > cap:
        raise TooManyVariables(f"n={formula.n} exceeds brute-force cap {cap}")
    idx = np.arange(1 << formula.n, dtype=np.int64)
    mask = np.ones(1 << formula.n, dtype=bool)
    for c in formula.clauses:
        clause_true = np.zeros(1 << formula.n, dtype=bool)
        for l in c.literals:
            bit = ((idx >> (l.var - 1)) & 1).astype(bool)
            clause_true |= ~bit if l.negated else bit
        mask &= clause_true
    return mask


def count_satisfying(formula: Formula, cap: int = BRUTE_FORCE_CAP) -> int:
    """Exact satisfying-assignment count by enumeration of all 2**n points.

    This is the independent oracle the rest of the toolchain is checked
    against; it never shares code with the circuit path.
    """
    return int(satisfying_mask(formula, cap=cap).sum())


@dataclass(frozen=True)
class ParseResult:
    formula: Formula
    tautologies_dropped: int
    duplicates_merged: int


def parse_dimacs(data: str | bytes) -> ParseResult:
    """Parse DIMACS CNF text into a canonical Formula.

    Comment lines start with ``c``; exactly one ``p cnf <n> <m>`` header
    must precede the clauses; clauses are 0-terminated integer lists and
    may span lines. Duplicate literals inside a clause are collapsed,
    tautological clauses are dropped (counted), duplicate clauses are
    merged (counted), and clause width > 3 is an error.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")

    n_vars: int | None = None
    raw_clauses: list[Clause] = []
    tautologies = 0
    current: list[int] = []

    def finish_clause() -> None:
        nonlocal tautologies
        lits = list(dict.fromkeys(current))  # collapse duplicate literals
        if not lits:
            raise EmptyClause("clause with no literals")
        if any(-v in lits for v in lits):
            tautologies += 1
            return
        if len(lits) > 3:
            raise ClauseTooWide(f"clause width {len(lits)} exceeds 3: {lits}")
        for v in lits:
            if abs(v) > n_vars:
                raise VariableOutOfRange(f"literal {v} out of range for n={n_vars}")
        raw_clauses.append(Clause.from_ints(lits))

    for line in data.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if n_vars is not None:
                raise MalformedHeader("duplicate problem line")
            parts = line.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "cnf":
                raise MalformedHeader(f"bad problem line: {line!r}")
            try:
                n_vars, _declared_m = int(parts[2]), int(parts[3])
            except ValueError as exc:
                raise MalformedHeader(f"bad problem line: {line!r}") from exc
            if n_vars < 0 or _declared_m < 0:
                raise MalformedHeader(f"negative counts in problem line: {line!r}")
            continue
        if n_vars is None:
            raise MalformedHeader(f"clause data before problem line: {line!r}")
        for tok in line.split():
            try:
                v = int(tok)
            except ValueError as exc:
                raise MalformedHeader(f"non-integer token {tok!r}") from exc
            if v == 0:
                finish_clause()
                current = []
            else:
                current.append(v)
    if n_vars is None:
        raise MalformedHeader("missing problem line")
    if current:
        finish_clause()  # tolerate a missing final 0

    formula = Formula(n_vars, tuple(raw_clauses))
    duplicates = len(raw_clauses) - formula.m
    return ParseResult(formula, tautologies, duplicates)


def emit_dimacs(formula: Formula) -> str:
    """Canonical DIMACS text: no comments, clauses in canonical order."""
    lines = [f"p cnf {formula.n} {formula.m}"]
    for c in formula.clauses:
        lines.append(" ".join(str(l.to_dimacs()) for l in c.literals) + " 0")
    return "\n".join(lines) + "\n"


def propagate_units(
    formula: Formula,
) -> tuple[Formula | None, dict[int, bool]]:
    """Optional preprocessing: fix variables forced by unit clauses.

    Returns the propagated formula plus the forced assignments, or
    ``(None, forced)`` when propagation derives a contradiction. Off by
    default everywhere; sparsification itself creates unit clauses, so
    the pipeline never calls this implicitly.
    """
    clauses = {c.enc_set for c in formula.clauses}
    forced: dict[int, bool] = {}
    while True:
        units = [c for c in clauses if len(c) == 1]
        if not units:
            break
        unit = min(units, key=lambda c: next(iter(c)))
        (enc,) = unit
        lit = Literal.from_enc(enc)
        forced[lit.var] = not lit.negated
        comp = lit.complement().enc
        next_clauses: set[frozenset[int]] = set()
        for c in clauses:
            if enc in c:
                continue            # satisfied
            stripped = c - {comp}
            if not stripped:
                return None, forced  # complementary unit: contradiction
            next_clauses.add(stripped)
        clauses = next_clauses
    rebuilt = tuple(
        Clause(tuple(Literal.from_enc(e) for e in sorted(c))) for c in clauses
    )
    return Formula(formula.n, rebuilt), forced
