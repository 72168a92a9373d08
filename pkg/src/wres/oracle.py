"""Brute-force ground truth for small formulas.

Total assignments are encoded as integers with bit ``v-1`` holding the value
of variable v, and enumerated in increasing order; this is the witness
search order everywhere.  Weight-bounded searches walk
``itertools.combinations`` of the true variables instead, in lexicographic
order, smallest weight first.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from typing import Sequence

import numpy as np

from .axioms import AxiomOracle
from .cnf import W1, Clause, CnfFormula

DEFAULT_BUDGET = 1 << 22
DEFAULT_COMBO_BUDGET = 10 ** 6
CHUNK = 1 << 20


class BudgetExceeded(RuntimeError):
    pass


def default_budget() -> int:
    env = os.environ.get("WRES_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass
class OracleResult:
    holds: bool
    witness: dict | None = None

    def __bool__(self):
        return self.holds


def _masks(clause):
    pos = neg = 0
    for lit in clause:
        if lit > 0:
            pos |= 1 << (lit - 1)
        else:
            neg |= 1 << (-lit - 1)
    return pos, neg


def _mask_satisfies(mask: int, masks) -> bool:
    return all((mask & pos) or (mask & neg) != neg for pos, neg in masks)


def decode(a: int, n: int) -> dict:
    return {v: bool(a >> (v - 1) & 1) for v in range(1, n + 1)}


def _check_total(n: int, budget):
    budget = default_budget() if budget is None else budget
    if n > 62 or (1 << n) > budget:
        raise BudgetExceeded(f"2^{n} assignments exceed the budget of {budget}")


def _chunks(n: int):
    total = 1 << n
    for start in range(0, total, CHUNK):
        yield np.arange(start, min(start + CHUNK, total), dtype=np.uint64)


def _sat_vector(a: np.ndarray, clause) -> np.ndarray:
    pos, neg = _masks(clause)
    pos, neg = np.uint64(pos), np.uint64(neg)
    return ((a & pos) != 0) | ((a & neg) != neg)


def _formula_vector(a: np.ndarray, clauses) -> np.ndarray:
    ok = np.ones(a.shape, dtype=bool)
    for c in clauses:
        ok &= _sat_vector(a, c)
    return ok


def find_model(formula: CnfFormula, budget: int | None = None):
    """First satisfying total assignment in enumeration order, or None."""
    n = formula.num_vars
    _check_total(n, budget)
    for a in _chunks(n):
        ok = _formula_vector(a, formula.clauses)
        hits = np.flatnonzero(ok)
        if hits.size:
            return decode(int(a[hits[0]]), n)
    return None


def is_unsat(formula: CnfFormula, budget: int | None = None) -> bool:
    return find_model(formula, budget) is None


def _weighted_search(formula: CnfFormula, weights, combo_budget):
    n = formula.num_vars
    total = sum(comb(n, w) for w in weights if 0 <= w <= n)
    if total > combo_budget:
        raise BudgetExceeded(f"{total} weight-bounded assignments exceed the budget of {combo_budget}")
    masks = [_masks(c) for c in formula.clauses]
    for w in weights:
        if not 0 <= w <= n:
            continue
        for trues in combinations(range(1, n + 1), w):
            mask = 0
            for v in trues:
                mask |= 1 << (v - 1)
            if _mask_satisfies(mask, masks):
                return decode(mask, n)
    return None


def is_wpcon(formula: CnfFormula, k: int, combo_budget: int = DEFAULT_COMBO_BUDGET) -> OracleResult:
    """True when no satisfying assignment has weight exactly k."""
    witness = _weighted_search(formula, [k], combo_budget)
    return OracleResult(witness is None, witness)


def is_pcon(formula: CnfFormula, k: int, combo_budget: int = DEFAULT_COMBO_BUDGET) -> OracleResult:
    """True when no satisfying assignment has weight at most k."""
    witness = _weighted_search(formula, range(k + 1), combo_budget)
    return OracleResult(witness is None, witness)


# -- axiom necessity --------------------------------------------------------

@dataclass
class NecessityRecord:
    index: int
    clause: Clause
    satisfiable: bool
    witness: dict | None = None


@dataclass
class NecessityReport:
    records: list = field(default_factory=list)

    @property
    def necessary(self) -> int:
        return sum(r.satisfiable for r in self.records)

    @property
    def all_necessary(self) -> bool:
        return all(r.satisfiable for r in self.records)

    def lines(self):
        yield f"RESULT necessity {self.necessary}/{len(self.records)} necessary"
        for r in self.records:
            wit = "-" if r.witness is None else " ".join(str(v) for v, b in sorted(r.witness.items()) if b) or "none-true"
            yield f"gamma {r.index} {' '.join(map(str, r.clause))} 0 satisfiable={int(r.satisfiable)} witness-true: {wit}"

    def summary(self) -> list:
        return [{"index": r.index, "clause": list(r.clause), "satisfiable": r.satisfiable,
                 "witness": None if r.witness is None else sorted(v for v, b in r.witness.items() if b)}
                for r in self.records]


def _popcount(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a).astype(np.int64)


def _context_ok(a, w, n, context: AxiomOracle, gamma_clause: Clause):
    """Assignments satisfying every context axiom except ``gamma_clause``.

    An all-negative axiom of width k+1 is falsified exactly by assignments
    whose true set contains its variables, so at most one axiom is falsified
    when the weight is k+1 and none below.  The positive side is symmetric
    in the false variables.
    """
    ok = np.ones(a.shape, dtype=bool)
    gpos, gneg = _masks(gamma_clause)
    if context.negative_width <= n:
        ok = w < context.negative_width
        if context.is_axiom(gamma_clause) and gamma_clause.is_negative:
            ok = ok | ((w == context.negative_width) & (a == np.uint64(gneg)))
    pw = context.positive_width
    if context.mode == W1 and pw is not None:
        f = n - w
        pos_ok = f < pw
        if context.is_axiom(gamma_clause) and gamma_clause.is_positive:
            full = np.uint64((1 << n) - 1)
            pos_ok = pos_ok | ((f == pw) & ((~a & full) == np.uint64(gpos)))
        ok = ok & pos_ok
    return ok


def verify_necessity(formula: CnfFormula, gamma: Sequence, context: AxiomOracle | None = None,
                     budget: int | None = None) -> NecessityReport:
    """For each clause of gamma, look for a model of everything else.

    "Everything else" is the formula, the other members of gamma and, when
    a context oracle is given, every augmentation axiom other than the
    removed clause.  A clause is necessary when that set is satisfiable.
    """
    n = formula.num_vars
    _check_total(n, budget)
    gamma = [Clause(g) for g in gamma]
    witnesses = [None] * len(gamma)
    for a in _chunks(n):
        pending = [i for i, wit in enumerate(witnesses) if wit is None]
        if not pending:
            break
        base = _formula_vector(a, formula.clauses)
        gsat = [_sat_vector(a, g) for g in gamma]
        w = _popcount(a) if context is not None else None
        for i in pending:
            ok = base.copy()
            for j, g in enumerate(gsat):
                if j != i:
                    ok &= g
            if context is not None:
                ok &= _context_ok(a, w, n, context, gamma[i])
            hits = np.flatnonzero(ok)
            if hits.size:
                witnesses[i] = decode(int(a[hits[0]]), n)
    report = NecessityReport()
    for i, g in enumerate(gamma):
        report.records.append(NecessityRecord(i + 1, g, witnesses[i] is not None, witnesses[i]))
    return report


def gamma_for(family: str, m: int | None = None, n: int | None = None, k: int = 1) -> list:
    """The clause sets the lower-bound arguments show to be unavoidable.

    theta: one negative literal from each of the k+1 rows, all m^(k+1) ways.
    psi:   (k+1)/2 complete pairs negated, all C(n/2, (k+1)/2) ways; k odd.
    """
    from .families import InvalidParameter

    if family == "theta":
        if m is None or m < 1 or k < 0:
            raise InvalidParameter("theta gamma needs m >= 1 and k >= 0")
        return [Clause(-((i * m) + a) for i, a in enumerate(choice))
                for choice in product(range(1, m + 1), repeat=k + 1)]
    if family == "psi":
        if n is None or n % 2 or n < 0:
            raise InvalidParameter("psi gamma needs an even n")
        if k % 2 == 0:
            raise InvalidParameter("psi gamma needs an odd k")
        return [Clause(lit for a in pairs for lit in (-(2 * a - 1), -(2 * a)))
                for pairs in combinations(range(1, n // 2 + 1), (k + 1) // 2)]
    raise InvalidParameter(f"no gamma for family {family!r}")
