"""Clauses, formulas, partial assignments and DIMACS I/O.

Literals are signed integers in the usual DIMACS convention: ``v`` is the
positive literal of variable ``v`` and ``-v`` its negation.  A clause is an
immutable, canonically ordered tuple of literals; an assignment is a plain
``dict`` mapping variable ids to booleans.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping


class MalformedInput(ValueError):
    """Raised for structurally invalid clauses or formulas."""


class DimacsError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


def _lit_key(lit: int):
    return (abs(lit), lit < 0)


class Clause(tuple):
    """A disjunction of literals, sorted by (variable, polarity) with duplicates removed.

    Tautologies such as ``(x1 v -x1)`` are kept as they are: the positive
    literal sorts before the negative one.
    """

    __slots__ = ()

    def __new__(cls, lits: Iterable[int] = ()):
        if isinstance(lits, Clause):
            return lits
        seen = set()
        for lit in lits:
            if not isinstance(lit, int) or isinstance(lit, bool) or lit == 0:
                raise MalformedInput(f"invalid literal {lit!r}")
            seen.add(lit)
        return super().__new__(cls, sorted(seen, key=_lit_key))

    @property
    def is_tautology(self) -> bool:
        return any(-lit in self for lit in self if lit > 0)

    @property
    def variables(self) -> frozenset:
        return frozenset(abs(lit) for lit in self)

    @property
    def is_positive(self) -> bool:
        return all(lit > 0 for lit in self)

    @property
    def is_negative(self) -> bool:
        return all(lit < 0 for lit in self)

    def __repr__(self):
        return f"Clause({list(self)})"

    def __str__(self):
        if not self:
            return "()"
        return "(" + " v ".join(str(lit) for lit in self) + ")"


def clause_normalize(lits: Iterable[int]) -> Clause:
    return Clause(lits)


class Status(enum.Enum):
    SATISFIED = "satisfied"
    FALSIFIED = "falsified"
    UNDETERMINED = "undetermined"


def lit_value(lit: int, alpha: Mapping[int, bool]):
    """Truth value of ``lit`` under ``alpha``, or None when unassigned."""
    val = alpha.get(abs(lit))
    if val is None:
        return None
    return val if lit > 0 else not val


def evaluate(clause: Iterable[int], alpha: Mapping[int, bool]) -> Status:
    undetermined = False
    for lit in clause:
        val = lit_value(lit, alpha)
        if val is None:
            undetermined = True
        elif val:
            return Status.SATISFIED
    return Status.UNDETERMINED if undetermined else Status.FALSIFIED


def weight(alpha: Mapping[int, bool]) -> int:
    return sum(1 for v in alpha.values() if v)


W1 = "w1"
W2 = "w2"
PLAIN = "plain"
MODES = (PLAIN, W1, W2)


@dataclass(frozen=True, eq=True, unsafe_hash=False)
class CnfFormula:
    """A CNF over variables ``1..num_vars``.

    ``names`` maps variable ids to structured symbols such as ``v[1][2]``.
    ``family``, ``k`` and ``mode`` are provenance metadata that travel
    with the DIMACS file as comments.
    """

    num_vars: int
    clauses: tuple = ()
    names: Mapping[int, str] = field(default_factory=dict)
    family: str | None = None
    k: int | None = None
    mode: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(Clause(c) for c in self.clauses))
        object.__setattr__(self, "names", dict(self.names))
        if self.num_vars < 0:
            raise MalformedInput("negative variable count")
        for i, c in enumerate(self.clauses, 1):
            for lit in c:
                if abs(lit) > self.num_vars:
                    raise MalformedInput(f"clause {i}: variable {abs(lit)} > {self.num_vars}")
        if len(set(self.names.values())) != len(self.names):
            raise MalformedInput("variable names are not unique")
        for v, name in self.names.items():
            if not 1 <= v <= self.num_vars:
                raise MalformedInput(f"name for out-of-range variable {v}")
            if not name or any(ch.isspace() for ch in name):
                raise MalformedInput(f"bad variable name {name!r}")
        if self.mode is not None and self.mode not in MODES:
            raise MalformedInput(f"unknown mode {self.mode!r}")

    def name(self, v: int) -> str:
        return self.names.get(v, f"x{v}")

    def var(self, name: str) -> int:
        for v, nm in self.names.items():
            if nm == name:
                return v
        raise KeyError(name)

    def is_3cnf(self) -> bool:
        return all(len(c) <= 3 for c in self.clauses)

    def satisfied_by(self, alpha: Mapping[int, bool]) -> bool:
        return all(evaluate(c, alpha) is Status.SATISFIED for c in self.clauses)

    def falsified_clause(self, alpha: Mapping[int, bool]):
        """Index (0-based) of the first clause falsified by ``alpha``, or None."""
        for i, c in enumerate(self.clauses):
            if evaluate(c, alpha) is Status.FALSIFIED:
                return i
        return None

    def replace(self, **changes) -> "CnfFormula":
        kw = dict(num_vars=self.num_vars, clauses=self.clauses, names=self.names,
                  family=self.family, k=self.k, mode=self.mode)
        kw.update(changes)
        return CnfFormula(**kw)


@dataclass(frozen=True)
class ParamInstance:
    formula: CnfFormula
    k: int
    mode: str = W1

    def __post_init__(self):
        if self.k < 0:
            raise MalformedInput("k must be non-negative")
        if self.mode not in MODES:
            raise MalformedInput(f"unknown mode {self.mode!r}")


def restrict_formula(formula: CnfFormula, alpha: Mapping[int, bool]):
    """Apply a partial assignment: drop satisfied clauses, strip false literals.

    Returns the restricted formula and a dict mapping surviving 1-based clause
    indices of ``formula`` to their index in the result.
    """
    clauses = []
    index_map = {}
    for i, c in enumerate(formula.clauses, 1):
        if evaluate(c, alpha) is Status.SATISFIED:
            continue
        clauses.append(Clause(lit for lit in c if abs(lit) not in alpha))
        index_map[i] = len(clauses)
    return formula.replace(clauses=tuple(clauses), family=None), index_map


# -- DIMACS -----------------------------------------------------------------

def emit_dimacs(formula: CnfFormula) -> str:
    out = []
    if formula.family:
        out.append(f"c family {formula.family}")
    if formula.k is not None:
        out.append(f"c param k {formula.k}")
    if formula.mode is not None:
        out.append(f"c mode {formula.mode}")
    for v in sorted(formula.names):
        out.append(f"c var {v} {formula.names[v]}")
    out.append(f"p cnf {formula.num_vars} {len(formula.clauses)}")
    for c in formula.clauses:
        out.append(" ".join(str(lit) for lit in (*c, 0)))
    return "\n".join(out) + "\n"


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise DimacsError(lineno, f"bad {what} {tok!r}") from None


def parse_dimacs(text: str) -> CnfFormula:
    num_vars = num_clauses = None
    names = {}
    family = k = mode = None
    clauses = []
    current = []
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            parts = line.split()
            if len(parts) >= 2 and parts[0] == "c":
                tag = parts[1]
                if tag == "var":
                    if len(parts) != 4:
                        raise DimacsError(lineno, "malformed var comment")
                    names[_int(parts[2], lineno, "variable id")] = parts[3]
                elif tag == "param" and len(parts) == 4 and parts[2] == "k":
                    k = _int(parts[3], lineno, "parameter")
                elif tag == "mode" and len(parts) == 3:
                    if parts[2] not in MODES:
                        raise DimacsError(lineno, f"unknown mode {parts[2]!r}")
                    mode = parts[2]
                elif tag == "family" and len(parts) >= 3:
                    family = " ".join(parts[2:])
            continue
        if line.startswith("p"):
            parts = line.split()
            if num_vars is not None:
                raise DimacsError(lineno, "duplicate header")
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(lineno, "malformed header")
            num_vars = _int(parts[2], lineno, "variable count")
            num_clauses = _int(parts[3], lineno, "clause count")
            if num_vars < 0 or num_clauses < 0:
                raise DimacsError(lineno, "malformed header")
            continue
        if num_vars is None:
            raise DimacsError(lineno, "clause before header")
        for tok in line.split():
            lit = _int(tok, lineno, "literal")
            if lit == 0:
                clauses.append(Clause(current))
                current = []
            elif abs(lit) > num_vars:
                raise DimacsError(lineno, f"literal {lit} out of range")
            else:
                current.append(lit)
    if num_vars is None:
        raise DimacsError(lineno, "missing header")
    if current:
        raise DimacsError(lineno, "clause not 0-terminated")
    if len(clauses) != num_clauses:
        raise DimacsError(lineno, f"header declares {num_clauses} clauses, found {len(clauses)}")
    try:
        return CnfFormula(num_vars, tuple(clauses), names, family, k, mode)
    except MalformedInput as e:
        raise DimacsError(lineno, str(e)) from None
